#include "corrlab/nelder_mead.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrlab/errors.h"

namespace corrlab {

void Box::project(std::span<double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = lower[i];
    const double hi = upper[i];
    if (periodic[i]) {
      const double width = hi - lo;
      double v = std::fmod(x[i] - lo, width);
      if (v < 0) v += width;
      x[i] = lo + v;
    } else {
      x[i] = std::clamp(x[i], lo, hi);
    }
  }
}

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

class Simplex {
 public:
  Simplex(const Objective& f, const Box& box, std::size_t& evaluations) : f_(f), box_(box), evaluations_(evaluations) {}

  // Periodic coordinates stay unwrapped inside the simplex so it never straddles a seam;
  // only the evaluated copy is wrapped.
  Vertex make(std::vector<double> x) {
    std::vector<double> wrapped = x;
    box_.project(wrapped);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!box_.periodic[i]) x[i] = wrapped[i];
    }
    ++evaluations_;
    const double v = f_(wrapped);
    return {std::move(x), std::isfinite(v) ? v : std::numeric_limits<double>::infinity()};
  }

  // Runs to convergence from a simplex around `center` (whose value is known).
  Vertex run(Vertex center, const NelderMeadOptions& opt, double step_scale) {
    const std::size_t n = center.x.size();
    std::vector<Vertex> s;
    s.reserve(n + 1);
    s.push_back(center);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> x = center.x;
      const double step = step_scale * opt.initial_step * (box_.upper[i] - box_.lower[i]);
      // Step inward when the outward step would be clamped back onto the center.
      x[i] += (!box_.periodic[i] && x[i] + step > box_.upper[i]) ? -step : step;
      s.push_back(make(std::move(x)));
    }

    std::vector<double> centroid(n);
    for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
      std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
      if (s.back().f - s.front().f <= opt.f_tol && diameter(s) <= opt.x_tol) break;

      std::fill(centroid.begin(), centroid.end(), 0.0);
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t i = 0; i < n; ++i) centroid[i] += s[v].x[i] / static_cast<double>(n);

      const Vertex& worst = s.back();
      auto along = [&](double t) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (worst.x[i] - centroid[i]);
        return make(std::move(x));
      };

      Vertex reflected = along(-1.0);
      if (reflected.f < s.front().f) {
        Vertex expanded = along(-2.0);
        s.back() = expanded.f < reflected.f ? std::move(expanded) : std::move(reflected);
      } else if (reflected.f < s[n - 1].f) {
        s.back() = std::move(reflected);
      } else {
        Vertex contracted = reflected.f < worst.f ? along(-0.5) : along(0.5);
        if (contracted.f < std::min(reflected.f, worst.f)) {
          s.back() = std::move(contracted);
        } else {
          for (std::size_t v = 1; v <= n; ++v) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i) x[i] = s[0].x[i] + 0.5 * (s[v].x[i] - s[0].x[i]);
            s[v] = make(std::move(x));
          }
        }
      }
    }
    return *std::min_element(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  }

 private:
  static double diameter(const std::vector<Vertex>& s) {
    double d = 0.0;
    for (std::size_t v = 1; v < s.size(); ++v)
      for (std::size_t i = 0; i < s[v].x.size(); ++i) d = std::max(d, std::abs(s[v].x[i] - s[0].x[i]));
    return d;
  }

  const Objective& f_;
  const Box& box_;
  std::size_t& evaluations_;
};

}  // namespace

LocalResult nelder_mead(const Objective& f, std::vector<double> start, const Box& box, const NelderMeadOptions& options) {
  if (start.size() != box.dimension() || box.upper.size() != box.dimension() || box.periodic.size() != box.dimension()) {
    throw PreconditionError("nelder_mead: start point and box dimensions differ");
  }
  if (start.empty()) throw PreconditionError("nelder_mead: empty parameter vector");
  std::size_t evaluations = 0;
  Simplex simplex(f, box, evaluations);
  Vertex best = simplex.make(std::move(start));
  Vertex current = simplex.run(best, options, 1.0);
  if (current.f < best.f) best = current;
  double scale = 1.0;
  for (std::size_t r = 0; r < options.restarts; ++r, scale *= 0.1) {
    Vertex again = simplex.run(best, options, scale);
    const bool improved = again.f < best.f;
    if (improved) best = std::move(again);
    if (!improved) break;
  }
  box.project(best.x);
  return {std::move(best.x), best.f, evaluations};
}

}  // namespace corrlab
