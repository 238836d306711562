#include "corrlab/qmat.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "corrlab/errors.h"

namespace corrlab {

namespace {

constexpr double kUnitNormTol = 1e-12;
constexpr double kHermTol = 1e-12;
constexpr double kInvolutionTol = 1e-10;
constexpr double kEigenInputTol = 1e-10;

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw PreconditionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()) + ")");
  }
}

void require_unit(const Vec3& n, const char* op) {
  const double norm = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (!(std::abs(norm - 1.0) <= kUnitNormTol)) {
    throw PreconditionError(std::string(op) + ": vector is not of unit norm");
  }
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw PreconditionError("ComplexMatrix: dimension must be in [1, 64]");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0 || dim > kMaxDim) {
    throw PreconditionError("ComplexMatrix: dimension must be in [1, 64]");
  }
  if (entries_.size() != dim * dim) {
    throw PreconditionError("ComplexMatrix: expected dim^2 entries");
  }
  if (!all_finite()) {
    throw PreconditionError("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "add");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "subtract");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs, "matmul");
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k) {
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) { return (a * b - b * a).max_abs(); }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).max_abs(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "trace_of_product");
  Complex t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  }
  return t;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix pauli_dot(const Vec3& n) {
  return ComplexMatrix(2, {Complex(n[2], 0), Complex(n[0], -n[1]), Complex(n[0], n[1]), Complex(-n[2], 0)});
}

ComplexMatrix su2_rotation(const Vec3& axis, double angle) {
  require_unit(axis, "su2_rotation");
  ComplexMatrix r = pauli_dot(axis) * Complex(0.0, std::sin(angle));
  r += ComplexMatrix::identity(2) * Complex(std::cos(angle), 0.0);
  return r;
}

HermitianEigen herm_eigen(const ComplexMatrix& m) {
  if (!is_hermitian(m, kEigenInputTol)) {
    throw PreconditionError("herm_eigen: input is not Hermitian");
  }
  const std::size_t n = m.dim();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return s;
  };
  double scale2 = 0.0;
  for (const auto& z : a.entries()) scale2 += std::norm(z);
  const double threshold2 = std::max(scale2, 1e-300) * 1e-32;

  for (int sweep = 0; sweep < 100 && off_norm2() > threshold2; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r == 0.0) continue;
        // Phase D = diag(1, e^{-i phi}) makes the (p, q) entry real, then a real rotation zeroes it.
        const Complex phase = std::conj(apq) / r;  // e^{-i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * phase;
        const Complex gqq = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * gpp + akq * gqp;
          a(k, q) = akp * gpq + akq * gqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * gpp + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::string to_debug_string(const ComplexMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      if (j) out += ' ';
      const Complex z = m(i, j);
      out += format_real(z.real());
      if (!std::signbit(z.imag())) out += '+';
      out += format_real(z.imag());
      out += 'i';
    }
    out += '\n';
  }
  return out;
}

ComplexMatrix parse_debug_string(std::string_view text) {
  std::vector<std::vector<Complex>> rows;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream tokens(line);
    std::string tok;
    std::vector<Complex> row;
    while (tokens >> tok) {
      if (tok.size() < 2 || tok.back() != 'i') throw PreconditionError("parse_debug_string: bad entry '" + tok + "'");
      // The imaginary part starts at the last sign that does not follow an exponent marker.
      std::size_t split = std::string::npos;
      for (std::size_t k = tok.size() - 1; k > 0; --k) {
        if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
          split = k;
          break;
        }
      }
      if (split == std::string::npos) throw PreconditionError("parse_debug_string: bad entry '" + tok + "'");
      try {
        row.emplace_back(std::stod(tok.substr(0, split)), std::stod(tok.substr(split, tok.size() - split - 1)));
      } catch (const std::exception&) {
        throw PreconditionError("parse_debug_string: bad entry '" + tok + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  std::vector<Complex> entries;
  for (auto& row : rows) {
    if (row.size() != n) throw PreconditionError("parse_debug_string: matrix is not square");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(n, std::move(entries));
}

Observable::Observable(ComplexMatrix m, ComplexMatrix plus, ComplexMatrix minus)
    : matrix_(std::move(m)), proj_plus_(std::move(plus)), proj_minus_(std::move(minus)) {}

Observable Observable::from_matrix(const ComplexMatrix& m) {
  if (!m.all_finite()) throw PreconditionError("Observable: non-finite entry");
  if (!is_hermitian(m, kHermTol)) throw PreconditionError("Observable: matrix is not Hermitian");
  const auto id = ComplexMatrix::identity(m.dim());
  if (max_abs_diff(m * m, id) > kInvolutionTol) {
    throw PreconditionError("Observable: matrix does not square to identity");
  }
  ComplexMatrix plus = (id + m) * Complex(0.5);
  ComplexMatrix minus = (id - m) * Complex(0.5);
  return Observable(m, std::move(plus), std::move(minus));
}

Observable Observable::from_projector(const ComplexMatrix& p) {
  return from_matrix(p * Complex(2.0) - ComplexMatrix::identity(p.dim()));
}

Observable Observable::evolved(const ComplexMatrix& unitary) const {
  const ComplexMatrix ud = unitary.adjoint();
  return Observable(ud * matrix_ * unitary, ud * proj_plus_ * unitary, ud * proj_minus_ * unitary);
}

Observable Observable::tensor_left(std::size_t right_dim) const {
  const auto id = ComplexMatrix::identity(right_dim);
  return Observable(kron(matrix_, id), kron(proj_plus_, id), kron(proj_minus_, id));
}

Observable Observable::tensor_right(std::size_t left_dim) const {
  const auto id = ComplexMatrix::identity(left_dim);
  return Observable(kron(id, matrix_), kron(id, proj_plus_), kron(id, proj_minus_));
}

Observable bloch_observable(const Vec3& n) {
  require_unit(n, "bloch_observable");
  return Observable::from_matrix(pauli_dot(n));
}

Observable xz_observable(double angle) { return Observable::from_matrix(pauli_dot({std::sin(angle), 0.0, std::cos(angle)})); }

State State::from_matrix(const ComplexMatrix& m) {
  if (!m.all_finite()) throw PreconditionError("State: non-finite entry");
  if (!is_hermitian(m, kHermTol)) throw PreconditionError("State: matrix is not Hermitian");
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > 1e-12) throw PreconditionError("State: trace differs from 1");
  const auto eig = herm_eigen(m);
  if (eig.values.front() < -1e-10) throw PreconditionError("State: matrix is not positive semidefinite");
  return State(m);
}

State State::pure(std::span<const Complex> psi) {
  double norm2 = 0.0;
  for (const auto& z : psi) norm2 += std::norm(z);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw PreconditionError("State::pure: zero or non-finite vector");
  ComplexMatrix rho = ComplexMatrix::outer(psi) * Complex(1.0 / norm2);
  // Outer products are Hermitian and PSD by construction; repair rounding in the diagonal only.
  for (std::size_t i = 0; i < rho.dim(); ++i) rho(i, i) = rho(i, i).real();
  return State(std::move(rho));
}

State State::maximally_mixed(std::size_t dim) {
  return State(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

double State::expectation(const ComplexMatrix& op) const { return trace_of_product(matrix_, op).real(); }

State phi_plus() {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<Complex> psi{h, 0.0, 0.0, h};
  return State::pure(psi);
}

}  // namespace corrlab
