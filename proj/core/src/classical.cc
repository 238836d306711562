#include "corrlab/classical.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrlab/errors.h"

namespace corrlab {

namespace {

constexpr double kNormalizationTol = 1e-9;
constexpr double kNegativeCellTol = 1e-12;
constexpr double kNoDisturbanceTol = 1e-7;
constexpr double kWitnessWeightFloor = 1e-15;
// Phase-1 optima below this are rounding noise of an exactly feasible problem.
constexpr double kPhase1NoiseFloor = 1e-12;

}  // namespace

MarginalSet::MarginalSet(std::vector<PairDistribution> pairs) : pairs_(std::move(pairs)) {
  const std::size_t n = pairs_.size();
  if (n < 3) throw PreconditionError("MarginalSet: need at least 3 pairs");
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (double p : pairs_[i]) {
      if (!std::isfinite(p) || p < -kNegativeCellTol) {
        throw PreconditionError("MarginalSet: pair " + std::to_string(i) + " has a negative or non-finite cell");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kNormalizationTol) {
      throw PreconditionError("MarginalSet: pair " + std::to_string(i) + " does not sum to 1");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& left = pairs_[(i + n - 1) % n];  // over (x_{i-1}, x_i)
    const auto& right = pairs_[i];                // over (x_i, x_{i+1})
    const double from_left = left[cell_index(1, 1)] + left[cell_index(-1, 1)];
    const double from_right = right[cell_index(1, 1)] + right[cell_index(1, -1)];
    if (std::abs(from_left - from_right) > kNoDisturbanceTol) {
      throw PreconditionError("MarginalSet: inconsistent single marginal for observable " + std::to_string(i));
    }
  }
}

double MarginalSet::correlator(std::size_t i) const {
  const auto& p = pairs_[i];
  return p[0] - p[1] - p[2] + p[3];
}

double MarginalSet::single(std::size_t i) const {
  const auto& p = pairs_[i];
  return p[0] + p[1] - p[2] - p[3];
}

MarginalSet MarginalSet::mixed_with(const MarginalSet& other, double weight) const {
  if (other.size() != size()) throw PreconditionError("MarginalSet::mixed_with: size mismatch");
  std::vector<PairDistribution> out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t k = 0; k < 4; ++k) out[i][k] = (1.0 - weight) * pairs_[i][k] + weight * other.pairs_[i][k];
  }
  return MarginalSet(std::move(out));
}

MarginalSet MarginalSet::uniform(std::size_t n) {
  return MarginalSet(std::vector<PairDistribution>(n, PairDistribution{0.25, 0.25, 0.25, 0.25}));
}

MarginalSet correlators_to_marginals(const CorrelationVector& c, std::span<const double> singles) {
  const std::size_t n = c.size();
  if (singles.size() != n) throw PreconditionError("correlators_to_marginals: expected one single per observable");
  std::vector<PairDistribution> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double si = singles[i];
    const double sj = singles[(i + 1) % n];
    if (std::abs(si) > 1.0 + 1e-12) throw PreconditionError("correlators_to_marginals: single outside [-1, 1]");
    for (int x : {1, -1}) {
      for (int y : {1, -1}) {
        const double p = (1.0 + x * si + y * sj + x * y * c.values()[i]) / 4.0;
        if (p < -kNegativeCellTol) {
          throw PreconditionError("correlators_to_marginals: moments of pair " + std::to_string(i) +
                                  " give a negative probability");
        }
        pairs[i][cell_index(x, y)] = std::max(0.0, p);
      }
    }
  }
  return MarginalSet(std::move(pairs));
}

MarginalSet correlators_to_marginals(const CorrelationVector& c) {
  const std::vector<double> zeros(c.size(), 0.0);
  return correlators_to_marginals(c, zeros);
}

double witness_residual(const MarginalSet& m, const std::map<std::uint32_t, double>& distribution) {
  const std::size_t n = m.size();
  std::vector<PairDistribution> reproduced(n, PairDistribution{});
  double total = 0.0;
  double worst = 0.0;
  for (const auto& [assignment, weight] : distribution) {
    total += weight;
    worst = std::max(worst, -weight);
    for (std::size_t i = 0; i < n; ++i) {
      reproduced[i][cell_index(assignment_value(assignment, i), assignment_value(assignment, (i + 1) % n))] += weight;
    }
  }
  worst = std::max(worst, std::abs(total - 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(reproduced[i][k] - m.pair(i)[k]));
  }
  return worst;
}

std::vector<double> witness_correlators(std::size_t n, const std::map<std::uint32_t, double>& distribution) {
  std::vector<double> out(n, 0.0);
  for (const auto& [assignment, weight] : distribution) {
    for (std::size_t i = 0; i < n; ++i) {
      out[i] += weight * assignment_value(assignment, i) * assignment_value(assignment, (i + 1) % n);
    }
  }
  return out;
}

JpdWitness jpd_feasible(const MarginalSet& m, const SimplexOptions& options) {
  const std::size_t n = m.size();
  if (n > kMaxJpdSize) {
    throw ResourceError("jpd_feasible: n = " + std::to_string(n) + " exceeds the LP cap of 16");
  }
  const std::size_t assignments = std::size_t{1} << n;
  // Row 0: normalization. Rows 1 + 4i + cell: pair i, cell.
  EqualityLp lp;
  lp.rows = 1 + 4 * n;
  lp.cols = assignments;
  lp.a.assign(lp.rows * lp.cols, 0.0);
  lp.b.assign(lp.rows, 0.0);
  lp.b[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 4; ++k) lp.b[1 + 4 * i + k] = m.pair(i)[k];
  }
  for (std::size_t x = 0; x < assignments; ++x) {
    const auto assignment = static_cast<std::uint32_t>(x);
    lp.a[x] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = cell_index(assignment_value(assignment, i), assignment_value(assignment, (i + 1) % n));
      lp.a[(1 + 4 * i + k) * lp.cols + x] = 1.0;
    }
  }

  const LpResult lp_result = solve_lp(lp, options);
  JpdWitness w;
  w.phase1_objective = lp_result.phase1_objective;
  w.pivots = lp_result.iterations;
  if (lp_result.status == LpStatus::kIterationLimit) {
    throw VerificationError("jpd_feasible: simplex hit its iteration limit");
  }
  if (lp_result.status != LpStatus::kOptimal) return w;

  w.feasible = true;
  w.within_tolerance_only = lp_result.phase1_objective > kPhase1NoiseFloor;
  for (std::size_t x = 0; x < assignments; ++x) {
    if (lp_result.x[x] > kWitnessWeightFloor) w.distribution[static_cast<std::uint32_t>(x)] = lp_result.x[x];
  }
  w.max_constraint_residual = witness_residual(m, w.distribution);
  if (w.max_constraint_residual > kWitnessResidualTol) {
    throw VerificationError("jpd_feasible: witness residual " + std::to_string(w.max_constraint_residual) +
                            " exceeds 1e-7");
  }
  return w;
}

}  // namespace corrlab
