#include "corrlab/qmat.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corrlab/errors.h"
#include "support/test_util.h"

namespace corrlab {
namespace {

using testing::matrices_near;
using testing::random_hermitian;
using testing::random_matrix;

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

ComplexMatrix diag(std::initializer_list<double> d) {
  std::vector<Complex> v(d.begin(), d.end());
  return ComplexMatrix::diagonal(v);
}

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_TRUE(matrices_near(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4), 0.0));
}

TEST(Kron, SigmaZSigmaZIsDiagonal) {
  EXPECT_TRUE(matrices_near(kron(pauli_z(), pauli_z()), diag({1, -1, -1, 1}), 0.0));
}

TEST(Kron, SigmaXSigmaXOnPhiPlusHasUnitExpectation) {
  const double v = phi_plus().expectation(kron(pauli_x(), pauli_x()));
  EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Kron, BlockOrdering) {
  std::mt19937_64 rng(3);
  const ComplexMatrix a = random_matrix(2, rng);
  const ComplexMatrix b = random_matrix(3, rng);
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.dim(), 6u);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(k(3 * i + r, 3 * j + c), a(i, j) * b(r, c));
}

TEST(Kron, MixedProductProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_matrix(2, rng), b = random_matrix(2, rng), c = random_matrix(2, rng), d = random_matrix(2, rng);
    EXPECT_TRUE(matrices_near(kron(a, b) * kron(c, d), kron(a * c, b * d), 1e-12));
  }
}

TEST(Su2Rotation, ZeroAngleIsIdentity) {
  EXPECT_TRUE(matrices_near(su2_rotation({0, 1, 0}, 0.0), ComplexMatrix::identity(2), 0.0));
}

TEST(Su2Rotation, QuarterTurnIsISigmaY) {
  EXPECT_TRUE(matrices_near(su2_rotation({0, 1, 0}, kPi / 2), kI * pauli_y(), 1e-15));
}

TEST(Su2Rotation, HeisenbergImageOfSigmaZ) {
  for (double theta : {0.1, 0.7, 4 * kPi / 5, 2.5}) {
    const ComplexMatrix r = su2_rotation({0, 1, 0}, theta);
    const ComplexMatrix expected = std::cos(2 * theta) * pauli_z() + std::sin(2 * theta) * pauli_x();
    EXPECT_TRUE(matrices_near(r.adjoint() * pauli_z() * r, expected, 1e-12)) << "theta " << theta;
  }
}

TEST(Su2Rotation, SchroedingerImageOfSigmaZ) {
  for (double theta : {0.1, 0.7, 4 * kPi / 5, 2.5}) {
    const ComplexMatrix r = su2_rotation({0, 1, 0}, theta);
    const ComplexMatrix expected = std::cos(2 * theta) * pauli_z() - std::sin(2 * theta) * pauli_x();
    EXPECT_TRUE(matrices_near(r * pauli_z() * r.adjoint(), expected, 1e-12)) << "theta " << theta;
  }
}

TEST(Su2Rotation, IsUnitary) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    Vec3 n{g(rng), g(rng), g(rng)};
    const double len = std::hypot(n[0], n[1], n[2]);
    for (auto& c : n) c /= len;
    const ComplexMatrix r = su2_rotation(n, g(rng));
    EXPECT_TRUE(matrices_near(r * r.adjoint(), ComplexMatrix::identity(2), 1e-12));
  }
}

TEST(Su2Rotation, CompositionAddsAngles) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 n{g(rng), g(rng), g(rng)};
    const double len = std::hypot(n[0], n[1], n[2]);
    for (auto& c : n) c /= len;
    const double a = 3 * g(rng);
    const double b = 3 * g(rng);
    EXPECT_TRUE(matrices_near(su2_rotation(n, a) * su2_rotation(n, b), su2_rotation(n, a + b), 1e-12));
  }
}

TEST(Su2Rotation, RejectsNonUnitAxis) {
  EXPECT_THROW(su2_rotation({0, 2, 0}, 0.3), PreconditionError);
  EXPECT_THROW(su2_rotation({0, 1 + 1e-9, 0}, 0.3), PreconditionError);
}

TEST(BlochObservable, AxisVectors) {
  EXPECT_TRUE(matrices_near(bloch_observable({0, 0, 1}).matrix(), pauli_z(), 0.0));
  EXPECT_TRUE(matrices_near(bloch_observable({1, 0, 0}).matrix(), pauli_x(), 0.0));
}

TEST(BlochObservable, EvenChainedVectorA1ForFourSettings) {
  const double phi = 2 * kPi / 4;
  const Observable a1 = bloch_observable({-std::sin(phi), 0, std::cos(phi)});
  EXPECT_TRUE(matrices_near(a1.matrix(), -1.0 * pauli_x(), 1e-15));
}

TEST(BlochObservable, RejectsNonUnitVector) { EXPECT_THROW(bloch_observable({0.5, 0, 0}), PreconditionError); }

TEST(BlochObservable, ProjectorsAreSpectral) {
  const Observable o = bloch_observable({0.6, 0, 0.8});
  EXPECT_TRUE(matrices_near(o.proj_plus() + o.proj_minus(), ComplexMatrix::identity(2), 1e-15));
  EXPECT_LE((o.proj_plus() * o.proj_minus()).max_abs(), 1e-15);
  EXPECT_TRUE(matrices_near(o.proj_plus() - o.proj_minus(), o.matrix(), 1e-15));
}

TEST(HermEigen, SigmaZ) {
  const HermitianEigen e = herm_eigen(pauli_z());
  ASSERT_EQ(e.values.size(), 2u);
  EXPECT_NEAR(e.values[0], -1.0, 1e-15);
  EXPECT_NEAR(e.values[1], 1.0, 1e-15);
}

TEST(HermEigen, IdentityFour) {
  const HermitianEigen e = herm_eigen(ComplexMatrix::identity(4));
  for (double v : e.values) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(HermEigen, SigmaXVectors) {
  const HermitianEigen e = herm_eigen(pauli_x());
  EXPECT_NEAR(e.values[0], -1.0, 1e-14);
  EXPECT_NEAR(e.values[1], 1.0, 1e-14);
  const double s = 1 / std::sqrt(2.0);
  // Eigenvectors are defined up to a phase: compare |<expected|v>|.
  const Complex minus_overlap = s * e.vectors(0, 0) - s * e.vectors(1, 0);
  const Complex plus_overlap = s * e.vectors(0, 1) + s * e.vectors(1, 1);
  EXPECT_NEAR(std::abs(minus_overlap), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(plus_overlap), 1.0, 1e-12);
}

TEST(HermEigen, RejectsNonHermitian) {
  ComplexMatrix m(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(herm_eigen(m), PreconditionError);
}

TEST(HermEigen, ReconstructionProperty) {
  std::mt19937_64 rng(13);
  for (std::size_t dim : {1u, 2u, 3u, 4u, 6u, 8u, 9u, 16u, 64u}) {
    const int trials = dim >= 16 ? 2 : 30;
    for (int trial = 0; trial < trials; ++trial) {
      const ComplexMatrix h = random_hermitian(dim, rng);
      const HermitianEigen e = herm_eigen(h);
      std::vector<Complex> lambda(e.values.begin(), e.values.end());
      const ComplexMatrix rec = e.vectors * ComplexMatrix::diagonal(lambda) * e.vectors.adjoint();
      EXPECT_TRUE(matrices_near(rec, h, 1e-10)) << "dim " << dim;
      EXPECT_TRUE(std::is_sorted(e.values.begin(), e.values.end()));
      EXPECT_TRUE(matrices_near(e.vectors.adjoint() * e.vectors, ComplexMatrix::identity(dim), 1e-10));
    }
  }
}

TEST(HermEigen, ObservableSpectrumIsPlusMinusOne) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 100; ++trial) {
    Vec3 n{g(rng), g(rng), g(rng)};
    const double len = std::hypot(n[0], n[1], n[2]);
    for (auto& c : n) c /= len;
    const Observable o = bloch_observable(n).tensor_left(2);
    for (double v : herm_eigen(o.matrix()).values) EXPECT_NEAR(std::abs(v), 1.0, 1e-9);
  }
}

TEST(Trace, CyclicProperty) {
  std::mt19937_64 rng(19);
  for (std::size_t dim : {2u, 3u, 4u, 9u}) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto a = random_matrix(dim, rng), b = random_matrix(dim, rng);
      EXPECT_LE(std::abs((a * b).trace() - (b * a).trace()), 1e-10);
      EXPECT_LE(std::abs(trace_of_product(a, b) - (a * b).trace()), 1e-10);
    }
  }
}

TEST(Commutators, PauliAlgebra) {
  EXPECT_TRUE(matrices_near(anticommutator(pauli_x(), pauli_z()), ComplexMatrix(2), 0.0));
  EXPECT_TRUE(matrices_near(anticommutator(pauli_x(), pauli_x()), 2.0 * ComplexMatrix::identity(2), 0.0));
  EXPECT_NEAR(commutator_norm(pauli_x(), pauli_y()), 2.0, 1e-15);
  EXPECT_EQ(commutator_norm(pauli_z(), diag({3, -2})), 0.0);
}

TEST(ComplexMatrixShape, RejectsBadDimensions) {
  EXPECT_THROW(ComplexMatrix(0), PreconditionError);
  EXPECT_THROW(ComplexMatrix(65), PreconditionError);
  EXPECT_THROW(ComplexMatrix(2, std::vector<Complex>(3)), PreconditionError);
  EXPECT_THROW(kron(ComplexMatrix::identity(9), ComplexMatrix::identity(8)), PreconditionError);
}

TEST(ComplexMatrixShape, RejectsNonFiniteEntries) {
  std::vector<Complex> e(4, 0.0);
  e[1] = {std::nan(""), 0.0};
  EXPECT_THROW(ComplexMatrix(2, e), PreconditionError);
}

TEST(DebugString, RoundTripIsExact) {
  std::mt19937_64 rng(23);
  for (std::size_t dim : {1u, 2u, 3u, 5u}) {
    const ComplexMatrix m = random_matrix(dim, rng);
    const ComplexMatrix back = parse_debug_string(to_debug_string(m));
    ASSERT_EQ(back.dim(), dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) EXPECT_EQ(back(i, j), m(i, j));
  }
}

TEST(DebugString, Format) {
  EXPECT_EQ(to_debug_string(pauli_y()), "0+0i 0-1i\n0+1i 0+0i\n");
}

TEST(ObservableType, RejectsNonDichotomic) {
  EXPECT_THROW(Observable::from_matrix(diag({1, 0.5})), PreconditionError);
  ComplexMatrix m = pauli_x();
  m(0, 1) = kI;
  EXPECT_THROW(Observable::from_matrix(m), PreconditionError);
}

TEST(ObservableType, EvolvedIsHeisenbergImage) {
  const ComplexMatrix u = su2_rotation({0, 1, 0}, 0.3);
  const Observable z = Observable::from_matrix(pauli_z());
  EXPECT_TRUE(matrices_near(z.evolved(u).matrix(), u.adjoint() * pauli_z() * u, 1e-15));
}

TEST(ObservableType, TensorEmbeddings) {
  const Observable x = Observable::from_matrix(pauli_x());
  EXPECT_TRUE(matrices_near(x.tensor_left(2).matrix(), kron(pauli_x(), ComplexMatrix::identity(2)), 0.0));
  EXPECT_TRUE(matrices_near(x.tensor_right(3).matrix(), kron(ComplexMatrix::identity(3), pauli_x()), 0.0));
}

TEST(StateType, Validation) {
  EXPECT_NO_THROW(State::maximally_mixed(3));
  EXPECT_THROW(State::from_matrix(ComplexMatrix::identity(2)), PreconditionError);
  EXPECT_THROW(State::from_matrix(diag({1.5, -0.5})), PreconditionError);
  ComplexMatrix nonherm = 0.5 * ComplexMatrix::identity(2);
  nonherm(0, 1) = 0.1;
  EXPECT_THROW(State::from_matrix(nonherm), PreconditionError);
}

TEST(StateType, PhiPlus) {
  const State s = phi_plus();
  EXPECT_NEAR(s.expectation(kron(pauli_z(), pauli_z())), 1.0, 1e-15);
  EXPECT_NEAR(s.expectation(kron(pauli_y(), pauli_y())), -1.0, 1e-15);
}

}  // namespace
}  // namespace corrlab
