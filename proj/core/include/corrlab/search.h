#pragma once

// Multi-start derivative-free minimization of an inequality's left-hand side over
// configuration parameters, and one-parameter sweeps for plotting.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "corrlab/nelder_mead.h"
#include "corrlab/scenario.h"

namespace corrlab {

enum class SearchKind {
  kTemporalTimes,   ///< n measurement times in [0, 1]
  kBlochAngles,     ///< n in-plane angles shared by Alice and Bob on |phi+>
  kContextualCone,  ///< qutrit pentagram: two hinge angles + two state angles
};

const char* to_string(SearchKind kind);
/// Accepts temporal-times, bloch-angles, contextual-cone.
SearchKind parse_search_kind(const std::string& name);

struct SearchSpace {
  SearchKind kind;
  Box box;

  std::size_t dimension() const { return box.dimension(); }

  static SearchSpace temporal_times(std::size_t n);
  static SearchSpace bloch_angles(std::size_t n);
  static SearchSpace contextual_cone();
};

using ConfigurationEvaluator = std::function<CorrelationVector(std::span<const double>)>;

/// sigma_z on a maximally mixed qubit under exp(i rate t sigma_y), one time per parameter.
ConfigurationEvaluator temporal_times_evaluator(const CycleScenario& scenario, double angular_rate);
/// <A_i B_{i+1}> on |phi+> with A_i = B_i = cos(a_i) sz + sin(a_i) sx.
ConfigurationEvaluator bloch_angles_evaluator(const CycleScenario& scenario);
/// Five real qutrit vectors with v_j orthogonal to v_{j+1}: v0 = e_x, v1 = e_y,
/// v2 = (cos a, 0, sin a), v3 = cos b e_y + sin b (-sin a, 0, cos a), v4 ~ v3 x v0;
/// state (sin p cos q, sin p sin q, cos p).
ConfigurationEvaluator contextual_cone_evaluator(const CycleScenario& scenario);

/// Space, scenario and evaluator for a kind with the standard n = 5 cycle.
struct SearchProblem {
  SearchSpace space;
  CycleScenario scenario;
  ConfigurationEvaluator evaluator;
};
SearchProblem kcbs_search_problem(SearchKind kind);

struct SearchOptions {
  std::size_t starts = 64;
  std::uint64_t seed = 1;
  NelderMeadOptions local;
};

struct SearchResult {
  std::vector<double> params;
  double value;
  /// Best objective among the random start points themselves.
  double best_seed_value;
  /// Start that produced the optimum (ties go to the lower index).
  std::size_t best_start;
  std::size_t evaluations;
};

/// Start points are drawn from mt19937_64(seed): each coordinate is
/// lower + (upper - lower) * (draw >> 11) * 2^-53, coordinates in order, starts in order.
SearchResult minimize_lhs(const SearchSpace& space, const CycleScenario& scenario,
                          const ConfigurationEvaluator& evaluator, const SearchOptions& options = {});

struct ScanRow {
  double parameter;
  double lhs;
  double classical_bound;
};

/// chained-n value for every n in [first, last].
std::vector<ScanRow> scan_chained(std::size_t first, std::size_t last);
/// Five-time protocol (t = 0, 1/4, ..., 1) with the angular rate swept over a grid.
std::vector<ScanRow> scan_temporal_rate(double from, double to, std::size_t steps);
/// Five shared settings at angles i * step on |phi+>, with the step swept over a grid.
std::vector<ScanRow> scan_spatial_step(double from, double to, std::size_t steps);

}  // namespace corrlab
