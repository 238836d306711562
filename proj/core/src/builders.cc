#include <charconv>
#include <cmath>
#include <string>

#include "corrlab/errors.h"
#include "corrlab/quantum.h"

namespace corrlab {

namespace {

constexpr std::string_view kChainedPrefix = "chained-";
constexpr std::size_t kMaxChained = kMaxEnumerationSize;

Evaluation finish(std::string name, std::string setting, CorrelationVector c) {
  const long long bound = classical_bound(c.scenario());
  const double lhs = inequality_lhs(c);
  return Evaluation{std::move(name), std::move(setting), std::move(c), bound, lhs, {}, {}, {}, {}};
}

Evaluation evaluate_spatial(std::string name, const BipartiteConfig& cfg) {
  Evaluation e = finish(std::move(name), "spatial", spatial_correlations(cfg));
  for (const auto& t : cfg.pairing) {
    const ComplexMatrix local = t.alice_first ? kron(cfg.alice[t.alice].matrix(), ComplexMatrix::identity(cfg.bob_dim()))
                                              : kron(ComplexMatrix::identity(cfg.alice_dim()), cfg.bob[t.bob].matrix());
    e.singles.push_back(cfg.state.expectation(local));
  }
  for (auto i : cfg.perfect_pairs) e.perfect_correlations.push_back(correlation_spatial(cfg, i, i));
  return e;
}

}  // namespace

std::vector<std::string> builder_names() {
  return {"kcbs-contextual", "kcbs-temporal", "kcbs-spatial", "chained-<n>"};
}

Evaluation evaluate_builder(const std::string& name) {
  if (name == "kcbs-contextual") {
    const ContextualConfig cfg = contextual_kcbs_configuration();
    const std::size_t n = cfg.observables.size();
    Evaluation e = finish(name, "contextual", contextual_correlations(cfg, CycleScenario::canonical(n)));
    for (std::size_t i = 0; i < n; ++i) {
      e.singles.push_back(cfg.state.expectation(cfg.observables[i].matrix()));
      e.commutator_norms.push_back(commutator_norm(cfg.observables[i].matrix(), cfg.observables[(i + 1) % n].matrix()));
    }
    return e;
  }
  if (name == "kcbs-temporal") {
    const TemporalProtocol p = temporal_kcbs_protocol();
    const CycleScenario s = CycleScenario::canonical(p.times.size());
    Evaluation e = finish(name, "temporal", temporal_correlations(p, s));
    const CorrelationVector simulated = temporal_correlations_simulated(p, s);
    for (std::size_t i = 0; i < s.size(); ++i) {
      e.singles.push_back(p.initial_state.expectation(p.observable_at(i).matrix()));
      e.oracle_residuals.push_back(std::abs(simulated.values()[i] - e.correlations.values()[i]));
    }
    return e;
  }
  if (name == "kcbs-spatial") return evaluate_spatial(name, spatial_kcbs_configuration());
  if (name.starts_with(kChainedPrefix)) {
    const std::string_view digits = std::string_view(name).substr(kChainedPrefix.size());
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw PreconditionError("malformed builder name '" + name + "'; expected chained-<n>");
    }
    if (n < 3 || n > kMaxChained) throw PreconditionError("chained-<n> requires 3 <= n <= 24");
    return evaluate_spatial(name, chained_configuration(n));
  }
  throw PreconditionError("unknown builder '" + name + "'");
}

}  // namespace corrlab
