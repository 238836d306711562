#include "corrlab/sampling.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace corrlab {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

namespace {

double gaussian(Rng& rng) {
  const double u = 1.0 - uniform01(rng);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

}  // namespace

Vec3 random_unit_vector(Rng& rng) {
  for (;;) {
    Vec3 v{gaussian(rng), gaussian(rng), gaussian(rng)};
    const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (len < 1e-8) continue;
    for (auto& c : v) c /= len;
    return v;
  }
}

State random_pure_state(std::size_t dim, Rng& rng) {
  std::vector<Complex> psi(dim);
  double norm2 = 0.0;
  for (auto& a : psi) {
    a = {gaussian(rng), gaussian(rng)};
    norm2 += std::norm(a);
  }
  for (auto& a : psi) a /= std::sqrt(norm2);
  return State::pure(psi);
}

State random_qubit_state(Rng& rng) {
  const Vec3 n = random_unit_vector(rng);
  const double r = std::cbrt(uniform01(rng));
  ComplexMatrix m = ComplexMatrix::identity(2) + pauli_dot({r * n[0], r * n[1], r * n[2]});
  m *= 0.5;
  return State::from_matrix(m);
}

Observable random_qubit_observable(Rng& rng) { return bloch_observable(random_unit_vector(rng)); }

HistoryFamily random_history_family(Rng& rng) {
  State rho = random_qubit_state(rng);
  std::array<Observable, 3> obs{random_qubit_observable(rng), random_qubit_observable(rng),
                                random_qubit_observable(rng)};
  return HistoryFamily::from_observables(std::move(rho), obs);
}

MarginalSet random_marginal_set(std::size_t n, Rng& rng, bool unbiased) {
  std::vector<double> s(n, 0.0);
  if (!unbiased) {
    for (auto& v : s) v = 2.0 * uniform01(rng) - 1.0;
  }
  std::vector<PairDistribution> pairs(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = s[i];
    const double b = s[(i + 1) % n];
    const double lo = std::abs(a + b) - 1.0;
    const double hi = 1.0 - std::abs(a - b);
    const double c = lo + (hi - lo) * uniform01(rng);
    auto& p = pairs[i];
    p[cell_index(1, 1)] = std::max(0.0, (1.0 + a + b + c) / 4.0);
    p[cell_index(1, -1)] = std::max(0.0, (1.0 + a - b - c) / 4.0);
    p[cell_index(-1, 1)] = std::max(0.0, (1.0 - a + b - c) / 4.0);
    p[cell_index(-1, -1)] = std::max(0.0, (1.0 - a - b + c) / 4.0);
  }
  return MarginalSet(std::move(pairs));
}

}  // namespace corrlab
