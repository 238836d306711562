#include "corrlab/simplex.h"

#include <cmath>
#include <limits>

#include "corrlab/errors.h"

namespace corrlab {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration-limit";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr int kDegenerateRunBeforeBland = 64;

// Tableau with m constraint rows and one reduced-cost row. Columns: the n structural
// variables, then m artificials, then the right-hand side.
class Tableau {
 public:
  Tableau(const EqualityLp& lp, const SimplexOptions& opt)
      : m_(lp.rows), n_(lp.cols), width_(lp.cols + lp.rows + 1), opt_(opt), t_((m_ + 1) * width_, 0.0),
        basis_(m_), active_(m_, true) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double sign = lp.b[i] < 0 ? -1.0 : 1.0;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * lp.a[i * n_ + j];
      at(i, n_ + i) = 1.0;
      at(i, rhs()) = sign * lp.b[i];
      basis_[i] = n_ + i;
    }
  }

  // Phase 1: minimize the sum of artificials.
  LpStatus run_phase1() {
    for (std::size_t j = 0; j < width_; ++j) cost(j) = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) cost(j) -= at(i, j);
      cost(rhs()) -= at(i, rhs());
    }
    return iterate(n_ + m_);
  }

  double objective_value() const { return -cost_const(rhs()); }

  // Pivots remaining artificials out of the basis; rows that cannot be are linearly dependent.
  std::size_t expel_artificials() {
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] < n_) continue;
      std::size_t enter = kNone;
      double best = opt_.pivot_tol;
      for (std::size_t j = 0; j < n_; ++j) {
        if (std::abs(at(i, j)) > best) {
          best = std::abs(at(i, j));
          enter = j;
        }
      }
      if (enter == kNone) {
        active_[i] = false;
        ++dropped;
      } else {
        pivot(i, enter);
      }
    }
    return dropped;
  }

  LpStatus run_phase2(const std::vector<double>& c) {
    for (std::size_t j = 0; j < width_; ++j) cost(j) = 0.0;
    for (std::size_t j = 0; j < n_; ++j) cost(j) = c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const std::size_t bj = basis_[i];
      const double cb = bj < n_ ? c[bj] : 0.0;
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) cost(j) -= cb * at(i, j);
    }
    return iterate(n_);
  }

  std::vector<double> solution() const {
    std::vector<double> x(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (active_[i] && basis_[i] < n_) x[basis_[i]] = std::max(0.0, at_const(i, rhs()));
    }
    return x;
  }

  std::size_t iterations() const { return iterations_; }

 private:
  double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  double at_const(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  double& cost(std::size_t j) { return t_[m_ * width_ + j]; }
  double cost_const(std::size_t j) const { return t_[m_ * width_ + j]; }
  std::size_t rhs() const { return width_ - 1; }

  std::size_t choose_entering(std::size_t eligible, bool bland) const {
    std::size_t enter = kNone;
    double most_negative = -opt_.cost_tol;
    for (std::size_t j = 0; j < eligible; ++j) {
      const double d = cost_const(j);
      if (d < most_negative) {
        if (bland) return j;
        most_negative = d;
        enter = j;
      }
    }
    return enter;
  }

  std::size_t choose_leaving(std::size_t enter) const {
    std::size_t leave = kNone;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const double coef = at_const(i, enter);
      if (coef <= opt_.pivot_tol) continue;
      const double ratio = at_const(i, rhs()) / coef;
      if (ratio < best_ratio - 1e-15 ||
          (ratio <= best_ratio + 1e-15 && leave != kNone && basis_[i] < basis_[leave])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = i;
      }
    }
    return leave;
  }

  LpStatus iterate(std::size_t eligible) {
    int degenerate_run = 0;
    while (true) {
      if (iterations_ >= opt_.max_iterations) return LpStatus::kIterationLimit;
      const bool bland = opt_.rule == PivotRule::kBland || degenerate_run >= kDegenerateRunBeforeBland;
      const std::size_t enter = choose_entering(eligible, bland);
      if (enter == kNone) return LpStatus::kOptimal;
      const std::size_t leave = choose_leaving(enter);
      if (leave == kNone) return LpStatus::kUnbounded;
      const bool degenerate = at(leave, rhs()) <= opt_.pivot_tol;
      degenerate_run = degenerate ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      ++iterations_;
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    double* row_r = &t_[r * width_];
    const double inv = 1.0 / row_r[e];
    for (std::size_t j = 0; j < width_; ++j) row_r[j] *= inv;
    row_r[e] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || (i < m_ && !active_[i])) continue;
      double* row_i = &t_[i * width_];
      const double f = row_i[e];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < width_; ++j) row_i[j] -= f * row_r[j];
      row_i[e] = 0.0;
    }
    basis_[r] = e;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  SimplexOptions opt_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_;
  std::size_t iterations_ = 0;
};

}  // namespace

LpResult solve_lp(const EqualityLp& lp, const SimplexOptions& options) {
  if (lp.a.size() != lp.rows * lp.cols || lp.b.size() != lp.rows || (!lp.c.empty() && lp.c.size() != lp.cols)) {
    throw PreconditionError("solve_lp: inconsistent problem dimensions");
  }
  LpResult result;
  Tableau tab(lp, options);
  const LpStatus phase1 = tab.run_phase1();
  result.phase1_objective = std::max(0.0, tab.objective_value());
  result.iterations = tab.iterations();
  if (phase1 == LpStatus::kIterationLimit) {
    result.status = phase1;
    return result;
  }
  if (result.phase1_objective > options.feasibility_tol) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  result.redundant_rows = tab.expel_artificials();
  if (!lp.c.empty()) {
    const LpStatus phase2 = tab.run_phase2(lp.c);
    result.iterations = tab.iterations();
    if (phase2 != LpStatus::kOptimal) {
      result.status = phase2;
      return result;
    }
  }
  result.status = LpStatus::kOptimal;
  result.x = tab.solution();
  result.objective = 0.0;
  for (std::size_t j = 0; j < lp.c.size(); ++j) result.objective += lp.c[j] * result.x[j];
  return result;
}

}  // namespace corrlab
