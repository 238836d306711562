#pragma once

// Dense complex linear algebra for small Hilbert spaces (dim <= 64).

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corrlab {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;

inline constexpr std::size_t kMaxDim = 64;

/// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  /// Takes dim*dim row-major entries; all must be finite.
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  /// |v><v| (no normalization applied).
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t dim() const { return dim_; }
  std::span<const Complex> entries() const { return entries_; }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  /// Largest |entry|.
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar) { return lhs *= scalar; }
  friend ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs) { return rhs *= scalar; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

/// Alias kept for readability at call sites that mirror the algebra.
inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b; }
inline ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }
inline Complex trace(const ComplexMatrix& m) { return m.trace(); }

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);
/// max-entry norm of AB - BA.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol);

/// Tr(ab) without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
/// n_x sx + n_y sy + n_z sz (no norm check).
ComplexMatrix pauli_dot(const Vec3& n);

/// exp(i * angle * (axis . sigma)) = cos(angle) I + i sin(angle) (axis . sigma).
/// Conjugation R sz R^dagger rotates the Bloch vector by 2*angle about axis
/// (in the negative sense), R^dagger sz R in the positive sense.
ComplexMatrix su2_rotation(const Vec3& axis, double angle);

struct HermitianEigen {
  std::vector<double> values;  ///< ascending
  ComplexMatrix vectors;       ///< column k is the eigenvector of values[k]
};

/// Cyclic complex Jacobi diagonalization of a Hermitian matrix.
HermitianEigen herm_eigen(const ComplexMatrix& m);

/// Row per line, entries "re+imi" separated by single spaces, 17 significant digits.
std::string to_debug_string(const ComplexMatrix& m);
ComplexMatrix parse_debug_string(std::string_view text);

/// Hermitian observable with spectrum in {+1, -1}.
class Observable {
 public:
  /// Validates hermiticity and M^2 = I; builds projectors (I +- M)/2.
  static Observable from_matrix(const ComplexMatrix& m);
  /// 2 P - I for a Hermitian projector P.
  static Observable from_projector(const ComplexMatrix& p);

  std::size_t dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const ComplexMatrix& proj_plus() const { return proj_plus_; }
  const ComplexMatrix& proj_minus() const { return proj_minus_; }
  /// Spectral projector for outcome +1 (k > 0) or -1 (k < 0).
  const ComplexMatrix& projector(int outcome) const { return outcome > 0 ? proj_plus_ : proj_minus_; }

  /// Heisenberg-picture image U^dagger M U.
  Observable evolved(const ComplexMatrix& unitary) const;
  /// A (x) I_dim or I_dim (x) A.
  Observable tensor_left(std::size_t right_dim) const;
  Observable tensor_right(std::size_t left_dim) const;

 private:
  Observable(ComplexMatrix m, ComplexMatrix plus, ComplexMatrix minus);
  ComplexMatrix matrix_;
  ComplexMatrix proj_plus_;
  ComplexMatrix proj_minus_;
};

/// Qubit observable n . sigma for a unit Bloch vector.
Observable bloch_observable(const Vec3& n);
/// cos(angle) sz + sin(angle) sx.
Observable xz_observable(double angle);

/// Density matrix: Hermitian, unit trace, positive semidefinite.
class State {
 public:
  static State from_matrix(const ComplexMatrix& m);
  /// |psi><psi| after normalizing psi.
  static State pure(std::span<const Complex> psi);
  static State maximally_mixed(std::size_t dim);

  std::size_t dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  /// Real part of Tr(rho * op).
  double expectation(const ComplexMatrix& op) const;

 private:
  explicit State(ComplexMatrix m) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

/// (|00> + |11>)/sqrt(2) on two qubits.
State phi_plus();

}  // namespace corrlab
