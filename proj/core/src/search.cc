#include "corrlab/search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "corrlab/errors.h"
#include "corrlab/quantum.h"

namespace corrlab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Box uniform_box(std::size_t n, double lo, double hi, bool periodic) {
  return Box{std::vector<double>(n, lo), std::vector<double>(n, hi), std::vector<bool>(n, periodic)};
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

}  // namespace

const char* to_string(SearchKind kind) {
  switch (kind) {
    case SearchKind::kTemporalTimes:
      return "temporal-times";
    case SearchKind::kBlochAngles:
      return "bloch-angles";
    case SearchKind::kContextualCone:
      return "contextual-cone";
  }
  return "unknown";
}

SearchKind parse_search_kind(const std::string& name) {
  if (name == "temporal-times") return SearchKind::kTemporalTimes;
  if (name == "bloch-angles") return SearchKind::kBlochAngles;
  if (name == "contextual-cone") return SearchKind::kContextualCone;
  throw PreconditionError("unknown search space '" + name + "'");
}

SearchSpace SearchSpace::temporal_times(std::size_t n) {
  return {SearchKind::kTemporalTimes, uniform_box(n, 0.0, 1.0, false)};
}

SearchSpace SearchSpace::bloch_angles(std::size_t n) {
  return {SearchKind::kBlochAngles, uniform_box(n, 0.0, kTwoPi, true)};
}

SearchSpace SearchSpace::contextual_cone() { return {SearchKind::kContextualCone, uniform_box(4, 0.0, kTwoPi, true)}; }

ConfigurationEvaluator temporal_times_evaluator(const CycleScenario& scenario, double angular_rate) {
  return [scenario, angular_rate](std::span<const double> times) {
    const std::size_t n = scenario.size();
    if (times.size() != n) throw PreconditionError("temporal_times_evaluator: expected one time per observable");
    const State rho = State::maximally_mixed(2);
    const Observable z = Observable::from_matrix(pauli_z());
    std::vector<Observable> xs;
    xs.reserve(n);
    for (double t : times) xs.push_back(z.evolved(su2_rotation({0.0, 1.0, 0.0}, angular_rate * t)));
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = anticommutator_correlation(rho, xs[i], xs[(i + 1) % n]);
    return CorrelationVector(scenario, std::move(values));
  };
}

ConfigurationEvaluator bloch_angles_evaluator(const CycleScenario& scenario) {
  return [scenario](std::span<const double> angles) {
    if (angles.size() != scenario.size()) throw PreconditionError("bloch_angles_evaluator: expected one angle per observable");
    BipartiteConfig cfg = shared_angle_configuration(angles);
    for (std::size_t i = 0; i < cfg.pairing.size(); ++i) cfg.pairing[i].sign = scenario.sign(i);
    return spatial_correlations(cfg);
  };
}

ConfigurationEvaluator contextual_cone_evaluator(const CycleScenario& scenario) {
  if (scenario.size() != 5) throw PreconditionError("contextual_cone_evaluator: the pentagram has five observables");
  return [scenario](std::span<const double> p) {
    if (p.size() != 4) throw PreconditionError("contextual_cone_evaluator: expected 4 parameters");
    const double a = p[0];
    const double b = p[1];
    const Vec3 v0{1.0, 0.0, 0.0};
    const Vec3 v1{0.0, 1.0, 0.0};
    const Vec3 v2{std::cos(a), 0.0, std::sin(a)};
    const Vec3 v3{-std::sin(b) * std::sin(a), std::cos(b), std::sin(b) * std::cos(a)};
    Vec3 v4 = cross(v3, v0);
    const double len = norm(v4);
    if (len < 1e-9) {
      // v3 parallel to v0: no fifth vector closes the cycle; report the classical worst case.
      return CorrelationVector(scenario, std::vector<double>(5, 1.0));
    }
    for (auto& c : v4) c /= len;
    const Vec3 psi{std::sin(p[2]) * std::cos(p[3]), std::sin(p[2]) * std::sin(p[3]), std::cos(p[2])};
    const std::vector<Vec3> vectors{v0, v1, v2, v3, v4};
    return contextual_correlations(contextual_from_vectors(vectors, psi), scenario);
  };
}

SearchProblem kcbs_search_problem(SearchKind kind) {
  const CycleScenario s = CycleScenario::canonical(5);
  switch (kind) {
    case SearchKind::kTemporalTimes:
      return {SearchSpace::temporal_times(5), s, temporal_times_evaluator(s, 8.0 * std::numbers::pi / 5.0)};
    case SearchKind::kBlochAngles:
      return {SearchSpace::bloch_angles(5), s, bloch_angles_evaluator(s)};
    case SearchKind::kContextualCone:
      return {SearchSpace::contextual_cone(), s, contextual_cone_evaluator(s)};
  }
  throw PreconditionError("kcbs_search_problem: unknown kind");
}

SearchResult minimize_lhs(const SearchSpace& space, const CycleScenario& scenario,
                          const ConfigurationEvaluator& evaluator, const SearchOptions& options) {
  if (options.starts == 0) throw PreconditionError("minimize_lhs: need at least one start");
  const Objective objective = [&](std::span<const double> params) {
    const CorrelationVector c = evaluator(params);
    if (c.scenario() != scenario) throw PreconditionError("minimize_lhs: evaluator produced a different scenario");
    return inequality_lhs(c);
  };
  std::mt19937_64 rng(options.seed);
  constexpr double kUnit = 1.0 / 9007199254740992.0;  // 2^-53

  SearchResult best{{}, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0, 0};
  for (std::size_t s = 0; s < options.starts; ++s) {
    std::vector<double> start(space.dimension());
    for (std::size_t i = 0; i < start.size(); ++i) {
      const double u = static_cast<double>(rng() >> 11) * kUnit;
      start[i] = space.box.lower[i] + (space.box.upper[i] - space.box.lower[i]) * u;
    }
    best.best_seed_value = std::min(best.best_seed_value, objective(start));
    LocalResult local = nelder_mead(objective, std::move(start), space.box, options.local);
    best.evaluations += local.evaluations + 1;
    if (local.value < best.value) {
      best.value = local.value;
      best.params = std::move(local.x);
      best.best_start = s;
    }
  }
  return best;
}

std::vector<ScanRow> scan_chained(std::size_t first, std::size_t last) {
  std::vector<ScanRow> rows;
  for (std::size_t n = first; n <= last; ++n) {
    const Evaluation e = evaluate_builder("chained-" + std::to_string(n));
    rows.push_back({static_cast<double>(n), e.lhs, static_cast<double>(e.classical_bound)});
  }
  return rows;
}

namespace {

std::vector<double> grid(double from, double to, std::size_t steps) {
  if (steps < 2) throw PreconditionError("scan: need at least 2 grid points");
  std::vector<double> g(steps);
  for (std::size_t i = 0; i < steps; ++i) g[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
  return g;
}

}  // namespace

std::vector<ScanRow> scan_temporal_rate(double from, double to, std::size_t steps) {
  const CycleScenario s = CycleScenario::canonical(5);
  const double bound = static_cast<double>(classical_bound(s));
  std::vector<ScanRow> rows;
  for (double rate : grid(from, to, steps)) {
    TemporalProtocol p = temporal_kcbs_protocol();
    p.angular_rate = rate;
    rows.push_back({rate, inequality_lhs(temporal_correlations(p, s)), bound});
  }
  return rows;
}

std::vector<ScanRow> scan_spatial_step(double from, double to, std::size_t steps) {
  const CycleScenario s = CycleScenario::canonical(5);
  const double bound = static_cast<double>(classical_bound(s));
  const ConfigurationEvaluator eval = bloch_angles_evaluator(s);
  std::vector<ScanRow> rows;
  for (double step : grid(from, to, steps)) {
    std::vector<double> angles(5);
    for (std::size_t i = 0; i < 5; ++i) angles[i] = step * static_cast<double>(i);
    rows.push_back({step, inequality_lhs(eval(angles)), bound});
  }
  return rows;
}

}  // namespace corrlab
