#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace corrlab {

/// Closed box; periodic coordinates wrap into [lower, upper) instead of clamping.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> periodic;

  std::size_t dimension() const { return lower.size(); }
  void project(std::span<double> x) const;
};

struct NelderMeadOptions {
  std::size_t max_iterations = 4000;
  /// Stop when f_worst - f_best <= f_tol and the simplex diameter <= x_tol.
  double f_tol = 1e-15;
  double x_tol = 1e-9;
  /// Initial edge length as a fraction of each box width.
  double initial_step = 0.1;
  /// Fresh simplices built around the incumbent after convergence.
  std::size_t restarts = 3;
};

struct LocalResult {
  std::vector<double> x;
  double value;
  std::size_t evaluations;
};

using Objective = std::function<double(std::span<const double>)>;

/// Box-projected Nelder-Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
/// The returned value never exceeds f(start).
LocalResult nelder_mead(const Objective& f, std::vector<double> start, const Box& box,
                        const NelderMeadOptions& options = {});

}  // namespace corrlab
