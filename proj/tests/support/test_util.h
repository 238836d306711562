#pragma once

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "corrlab/qmat.h"

namespace corrlab::testing {

inline ComplexMatrix random_matrix(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = {g(rng), g(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  const ComplexMatrix m = random_matrix(dim, rng);
  ComplexMatrix h = m + m.adjoint();
  h *= 0.5;
  return h;
}

inline ::testing::AssertionResult matrices_near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.dim() != b.dim()) return ::testing::AssertionFailure() << "dimensions " << a.dim() << " vs " << b.dim();
  const double d = max_abs_diff(a, b);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "max |a - b| = " << d << " > " << tol << "\n"
                                       << to_debug_string(a) << "vs\n" << to_debug_string(b);
}

}  // namespace corrlab::testing
