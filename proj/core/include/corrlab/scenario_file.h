#pragma once

// Plain-text scenario description:
//
//   # comments and blank lines are ignored
//   n = 5
//   signs = + + + + +             (optional; canonical pattern when absent)
//   builder = kcbs-temporal       (optional)
//   param.<name> = <text>         (optional, any number)
//   correlators = c_0 ... c_{n-1} (optional)
//   singles = s_0 ... s_{n-1}     (optional, needs correlators)
//   pair.<i> = p++ p+- p-+ p--    (optional; all n pairs or none)
//
// Reals are written with 17 significant digits so that parse(write(f)) == f.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corrlab/classical.h"
#include "corrlab/scenario.h"

namespace corrlab {

struct ScenarioFile {
  CycleScenario scenario = CycleScenario::canonical(3);
  std::optional<std::string> builder;
  std::map<std::string, std::string> params;
  std::optional<std::vector<double>> correlators;
  std::optional<std::vector<double>> singles;
  std::optional<std::vector<PairDistribution>> pairs;

  friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

/// Throws PreconditionError with the offending line number on malformed input.
ScenarioFile parse_scenario_file(std::string_view text);
std::string write_scenario_file(const ScenarioFile& file);

ScenarioFile read_scenario_file(const std::string& path);

/// Explicit pairs, else correlators (+ singles, default unbiased), else the builder's
/// quantum prediction. Throws PreconditionError when none is present.
MarginalSet scenario_marginals(const ScenarioFile& file);

}  // namespace corrlab
