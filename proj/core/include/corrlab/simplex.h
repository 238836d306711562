#pragma once

// Dense two-phase simplex for small equality-form linear programs:
//   minimize c.x  subject to  A x = b,  x >= 0.

#include <cstddef>
#include <vector>

namespace corrlab {

enum class PivotRule {
  kBland,    ///< smallest eligible index; never cycles
  kDantzig,  ///< most negative reduced cost, falls back to Bland on long degenerate runs
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* to_string(LpStatus status);

struct EqualityLp {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  ///< rows x cols, row-major
  std::vector<double> b;  ///< rows
  std::vector<double> c;  ///< cols; empty means pure feasibility
};

struct SimplexOptions {
  PivotRule rule = PivotRule::kDantzig;
  /// Phase-1 optimum at or below this counts as feasible.
  double feasibility_tol = 1e-9;
  double pivot_tol = 1e-12;
  double cost_tol = 1e-12;
  std::size_t max_iterations = 2'000'000;
};

struct LpResult {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> x;  ///< filled for kOptimal
  double objective = 0.0;
  /// Sum of artificial variables at the end of phase 1 (0 for an exactly feasible start).
  double phase1_objective = 0.0;
  std::size_t iterations = 0;
  /// Equality rows found linearly dependent and dropped after phase 1.
  std::size_t redundant_rows = 0;
};

LpResult solve_lp(const EqualityLp& lp, const SimplexOptions& options = {});

}  // namespace corrlab
