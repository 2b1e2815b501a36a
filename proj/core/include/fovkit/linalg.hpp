#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fov {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Tolerance used for "is this >= 0 / Hermitian / on the circle" tests when
/// the caller does not supply one.
inline constexpr double kDefaultTol = 1e-9;

/**
 * Dense square complex matrix, row-major.
 *
 * A default-constructed matrix is empty (dim 0); every other constructor
 * requires a positive dimension and finite entries.
 */
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim);
  CMatrix(std::size_t dim, std::vector<Complex> entries);
  CMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static CMatrix identity(std::size_t dim);
  static CMatrix zeros(std::size_t dim) { return CMatrix(dim); }
  static CMatrix diagonal(std::span<const Complex> values);

  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }

  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }

  CMatrix adjoint() const;
  double frobenius_norm() const;
  double trace_real() const;
  Complex trace() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(Complex scalar);

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix lhs, Complex scalar) { return lhs *= scalar; }
  friend CMatrix operator*(Complex scalar, CMatrix rhs) { return rhs *= scalar; }
  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

CVector operator*(const CMatrix& a, std::span<const Complex> x);

/// <x, y> = sum_i x_i conj(y_i), linear in the first argument.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Integer power by repeated squaring; power 0 gives the identity.
CMatrix matrix_power(const CMatrix& t, unsigned power);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  std::vector<CVector> eigenvectors;  // orthonormal, eigenvectors[i] pairs with eigenvalues[i]
};

/// Full spectrum of a Hermitian matrix by cyclic complex Jacobi rotations.
/// Throws NotHermitian when ||H - H*||_F > tol (1 + ||H||_F) and
/// NoConvergence after 100 sweeps.
EigenDecomposition hermitian_eig(const CMatrix& h, double tol = kDefaultTol);

/// Eigenvalues only (ascending): Householder reduction to tridiagonal form,
/// then Sturm-sequence bisection to rounding level. Same preconditions as
/// hermitian_eig.
std::vector<double> hermitian_eigenvalues(const CMatrix& h, double tol = kDefaultTol);

/// Largest eigenvalue only, by the same reduction.
double hermitian_max_eigenvalue(const CMatrix& h, double tol = kDefaultTol);

/// X = A^{-1} B by partial-pivot elimination. Throws Singular when a pivot
/// falls below 1e-13 ||A||_F.
CMatrix solve(const CMatrix& a, const CMatrix& b);

struct PsdResult {
  bool psd = false;
  double min_eigenvalue = 0.0;
};

PsdResult is_psd(const CMatrix& h, double tol = kDefaultTol);

/// Largest singular value, sqrt(lambda_max(T* T)).
double operator_norm(const CMatrix& t);

}  // namespace fov
