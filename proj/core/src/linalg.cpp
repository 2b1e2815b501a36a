#include "fovkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "fovkit/errors.hpp"

namespace fov {

CMatrix::CMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
  if (dim == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  }
}

CMatrix::CMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim == 0) {
    throw Error(ErrorCode::InvalidArgument, "matrix dimension must be positive");
  }
  if (entries_.size() != dim * dim) {
    throw Error(ErrorCode::InvalidArgument,
                "expected " + std::to_string(dim * dim) + " entries, got " +
                    std::to_string(entries_.size()));
  }
  if (!all_finite()) {
    throw Error(ErrorCode::InvalidArgument, "matrix entries must be finite");
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n = rows.size();
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) {
      throw Error(ErrorCode::InvalidArgument, "matrix rows must all have length " + std::to_string(n));
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  *this = CMatrix(n, std::move(entries));
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> values) {
  CMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) m(j, i) = std::conj((*this)(i, j));
  }
  return m;
}

double CMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

Complex CMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double CMatrix::trace_real() const { return trace().real(); }

bool CMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in +");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in -");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  const std::size_t n = lhs.dim();
  if (rhs.dim() != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in *");
  CMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

CVector operator*(const CMatrix& a, std::span<const Complex> x) {
  const std::size_t n = a.dim();
  if (x.size() != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in matrix-vector product");
  CVector y(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += a(i, j) * x[j];
    y[i] = sum;
  }
  return y;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in inner product");
  Complex sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * std::conj(y[i]);
  return sum;
}

double norm(std::span<const Complex> x) {
  double sum = 0.0;
  for (const auto& z : x) sum += std::norm(z);
  return std::sqrt(sum);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return worst;
}

CMatrix matrix_power(const CMatrix& t, unsigned power) {
  CMatrix result = CMatrix::identity(t.dim());
  CMatrix base = t;
  while (power > 0) {
    if (power & 1U) result = result * base;
    power >>= 1U;
    if (power > 0) base = base * base;
  }
  return result;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kJacobiRelativeThreshold = 1e-13;
constexpr double kPivotRelativeThreshold = 1e-13;

void require_hermitian(const CMatrix& h, double tol) {
  if (h.empty()) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  const std::size_t n = h.dim();
  double diff = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) diff += std::norm(h(i, j) - std::conj(h(j, i)));
  }
  diff = std::sqrt(diff);
  if (!(diff <= tol * (1.0 + h.frobenius_norm()))) {
    throw Error(ErrorCode::NotHermitian,
                "||H - H*||_F = " + std::to_string(diff) + " exceeds tolerance");
  }
}

CMatrix symmetrized(const CMatrix& h) {
  const std::size_t n = h.dim();
  CMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = h(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (h(i, j) + std::conj(h(j, i)));
      s(i, j) = v;
      s(j, i) = std::conj(v);
    }
  }
  return s;
}

double off_diagonal_norm(const CMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

// Cyclic Jacobi on a Hermitian matrix. Each rotation is U = D P with
// D = diag(1, conj(phase(a_pq))) making the pivot real and P the classical
// real rotation that annihilates it. On return the diagonal of `a` holds the
// eigenvalues; `vectors` (if given) accumulates the product of rotations.
void jacobi_diagonalize(CMatrix& a, CMatrix* vectors) {
  const std::size_t n = a.dim();
  const double scale = a.frobenius_norm();
  if (scale == 0.0) return;
  const double threshold = kJacobiRelativeThreshold * scale;

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const Complex phase = apq / g;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        const double theta = (aqq - app) / (2.0 * g);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * g;
        a(q, q) = aqq + t * g;

        if (vectors != nullptr) {
          CMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = v(k, p);
            const Complex vkq = v(k, q);
            v(k, p) = vkp * upp + vkq * uqp;
            v(k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }
  if (off_diagonal_norm(a) > threshold) {
    throw Error(ErrorCode::NoConvergence, "Jacobi iteration hit the sweep cap");
  }
}

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form. Off-diagonal entries are returned as magnitudes, which is a diagonal
// unitary similarity away from the complex tridiagonal.
struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off_squared;  // |e_i|^2 between rows i and i + 1
};

Tridiagonal tridiagonalize(CMatrix a) {
  const std::size_t n = a.dim();
  Tridiagonal out;
  out.diag.resize(n);
  out.off_squared.assign(n > 0 ? n - 1 : 0, 0.0);
  CVector v(n), p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double xnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) xnorm2 += std::norm(a(i, k));
    const double tail2 = xnorm2 - std::norm(a(k + 1, k));
    if (tail2 == 0.0) {
      out.off_squared[k] = xnorm2;
      continue;
    }
    const double xnorm = std::sqrt(xnorm2);
    const Complex x0 = a(k + 1, k);
    const Complex phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -phase * xnorm;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      v[i] = a(i, k);
      if (i == k + 1) v[i] -= alpha;
      vnorm2 += std::norm(v[i]);
    }
    const double vinv = 1.0 / std::sqrt(vnorm2);
    for (std::size_t i = k + 1; i < n; ++i) v[i] *= vinv;

    // B <- H B H with H = I - 2 v v*, via p = B v, q = p - (v* p) v.
    double kappa = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex sum = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) sum += a(i, j) * v[j];
      p[i] = sum;
      kappa += (std::conj(v[i]) * sum).real();
    }
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= kappa * v[i];
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) -= 2.0 * (v[i] * std::conj(p[j]) + p[i] * std::conj(v[j]));
      }
    }
    out.off_squared[k] = xnorm2;
  }
  if (n >= 2) out.off_squared[n - 2] = std::norm(a(n - 1, n - 2));
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = a(i, i).real();
  return out;
}

// Number of eigenvalues strictly below x (Sturm sequence).
std::size_t count_below(const Tridiagonal& t, double x, double pivmin) {
  std::size_t count = 0;
  double q = t.diag[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
    if (i + 1 == t.diag.size()) break;
    q = t.diag[i + 1] - x - t.off_squared[i] / q;
  }
  return count;
}

// k-th smallest eigenvalue (0-based) by bisection to rounding level.
double bisect_eigenvalue(const Tridiagonal& t, std::size_t k, double lo, double hi, double pivmin) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * eps * std::max(std::abs(lo), std::abs(hi)) + pivmin || mid <= lo || mid >= hi) break;
    if (count_below(t, mid, pivmin) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct SpectrumBracket {
  double lo;
  double hi;
  double pivmin;
};

SpectrumBracket gershgorin(const Tridiagonal& t) {
  const std::size_t n = t.diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double largest_off = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::sqrt(t.off_squared[i - 1]);
    if (i + 1 < n) radius += std::sqrt(t.off_squared[i]);
    lo = std::min(lo, t.diag[i] - radius);
    hi = std::max(hi, t.diag[i] + radius);
    if (i + 1 < n) largest_off = std::max(largest_off, t.off_squared[i]);
  }
  const double width = std::max({std::abs(lo), std::abs(hi), std::numeric_limits<double>::min()});
  const double pad = 4.0 * std::numeric_limits<double>::epsilon() * width;
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, largest_off);
  return {lo - pad, hi + pad, pivmin};
}

}  // namespace

EigenDecomposition hermitian_eig(const CMatrix& h, double tol) {
  require_hermitian(h, tol);
  CMatrix a = symmetrized(h);
  const std::size_t n = a.dim();
  CMatrix v = CMatrix::identity(n);
  jacobi_diagonalize(a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenDecomposition out;
  out.eigenvalues.reserve(n);
  out.eigenvectors.reserve(n);
  for (const std::size_t k : order) {
    out.eigenvalues.push_back(a(k, k).real());
    CVector column(n);
    for (std::size_t i = 0; i < n; ++i) column[i] = v(i, k);
    out.eigenvectors.push_back(std::move(column));
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& h, double tol) {
  require_hermitian(h, tol);
  const Tridiagonal t = tridiagonalize(symmetrized(h));
  const SpectrumBracket b = gershgorin(t);
  std::vector<double> values(t.diag.size());
  for (std::size_t k = 0; k < values.size(); ++k) values[k] = bisect_eigenvalue(t, k, b.lo, b.hi, b.pivmin);
  std::sort(values.begin(), values.end());
  return values;
}

double hermitian_max_eigenvalue(const CMatrix& h, double tol) {
  require_hermitian(h, tol);
  const Tridiagonal t = tridiagonalize(symmetrized(h));
  const SpectrumBracket b = gershgorin(t);
  return bisect_eigenvalue(t, t.diag.size() - 1, b.lo, b.hi, b.pivmin);
}

CMatrix solve(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.dim();
  if (n == 0 || b.dim() != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch in solve");
  const double threshold = kPivotRelativeThreshold * a.frobenius_norm();
  if (threshold == 0.0) throw Error(ErrorCode::Singular, "zero matrix");

  CMatrix lu = a;
  CMatrix x = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(lu(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = std::abs(lu(r, col));
      if (m > best) {
        best = m;
        pivot = r;
      }
    }
    if (best < threshold) {
      throw Error(ErrorCode::Singular, "pivot " + std::to_string(best) + " below threshold in column " +
                                           std::to_string(col));
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(lu(col, j), lu(pivot, j));
        std::swap(x(col, j), x(pivot, j));
      }
    }
    const Complex inv = 1.0 / lu(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const Complex factor = lu(r, col) * inv;
      if (factor == Complex{}) continue;
      lu(r, col) = 0.0;
      for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= factor * lu(col, j);
      for (std::size_t j = 0; j < n; ++j) x(r, j) -= factor * x(col, j);
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    const Complex inv = 1.0 / lu(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      Complex sum = x(col, j);
      for (std::size_t k = col + 1; k < n; ++k) sum -= lu(col, k) * x(k, j);
      x(col, j) = sum * inv;
    }
  }
  return x;
}

PsdResult is_psd(const CMatrix& h, double tol) {
  const auto values = hermitian_eigenvalues(h, tol);
  const double lowest = values.front();
  return {lowest >= -tol, lowest};
}

double operator_norm(const CMatrix& t) {
  const auto values = hermitian_eigenvalues(t.adjoint() * t);
  return std::sqrt(std::max(0.0, values.back()));
}

}  // namespace fov
