#pragma once

// Existence of a joint probability distribution over all n cycle observables that
// reproduces the measured adjacent-pair distributions, decided by linear programming.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "corrlab/scenario.h"
#include "corrlab/simplex.h"

namespace corrlab {

inline constexpr std::size_t kMaxJpdSize = 16;

/// Cells of p(x_i, x_{i+1}) in the order (+,+), (+,-), (-,+), (-,-).
using PairDistribution = std::array<double, 4>;

inline constexpr std::size_t cell_index(int first, int second) {
  return (first > 0 ? 0 : 2) + (second > 0 ? 0 : 1);
}

/// Adjacent-pair distributions of an n-cycle; pairs[i] is over (x_i, x_{i+1 mod n}).
class MarginalSet {
 public:
  /// Validates normalization (1e-9), nonnegativity (-1e-12) and no-disturbance of
  /// the implied single marginals (1e-7); throws PreconditionError otherwise.
  explicit MarginalSet(std::vector<PairDistribution> pairs);

  std::size_t size() const { return pairs_.size(); }
  const std::vector<PairDistribution>& pairs() const { return pairs_; }
  const PairDistribution& pair(std::size_t i) const { return pairs_[i]; }

  /// <X_i X_{i+1}>.
  double correlator(std::size_t i) const;
  /// <X_i> implied by pair i.
  double single(std::size_t i) const;
  /// Convex combination (1 - weight) * this + weight * other.
  MarginalSet mixed_with(const MarginalSet& other, double weight) const;

  static MarginalSet uniform(std::size_t n);

 private:
  std::vector<PairDistribution> pairs_;
};

/// Pair distributions with first moments `singles` and second moments from `c`:
/// p(x, y) = (1 + x s_i + y s_{i+1} + x y c_i) / 4. Throws on a negative cell.
MarginalSet correlators_to_marginals(const CorrelationVector& c, std::span<const double> singles);
/// Unbiased singles.
MarginalSet correlators_to_marginals(const CorrelationVector& c);

/// Assignment index bit b set means x_b = -1.
inline int assignment_value(std::uint32_t assignment, std::size_t b) { return (assignment >> b) & 1u ? -1 : 1; }

struct JpdWitness {
  bool feasible = false;
  /// Phase-1 optimum was positive but within the feasibility tolerance.
  bool within_tolerance_only = false;
  /// Nonzero weights by assignment index; empty when infeasible.
  std::map<std::uint32_t, double> distribution;
  /// Largest |reproduced - given| over all pair cells and the normalization.
  double max_constraint_residual = 0.0;
  double phase1_objective = 0.0;
  std::size_t pivots = 0;
};

inline constexpr double kWitnessResidualTol = 1e-7;

/// LP over the 2^n deterministic assignments. Throws ResourceError for n > 16 and
/// VerificationError if a reported witness fails the independent residual check.
JpdWitness jpd_feasible(const MarginalSet& m, const SimplexOptions& options = {});

/// Max residual of `distribution` against `m`, computed without the solver.
double witness_residual(const MarginalSet& m, const std::map<std::uint32_t, double>& distribution);

/// <X_i X_{i+1}> under a witnessed distribution, for every edge.
std::vector<double> witness_correlators(std::size_t n, const std::map<std::uint32_t, double>& distribution);

}  // namespace corrlab
