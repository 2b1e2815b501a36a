#include "fovkit/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fovkit/errors.hpp"

namespace fov {

namespace {

constexpr std::size_t kRadiusGrid = 256;
constexpr std::size_t kRefinedPeaks = 3;
constexpr int kMaxGoldenIterations = 200;

double angle_on_grid(std::size_t k, std::size_t n) {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
}

double golden_section_max(const CMatrix& t, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = support_value(t, x1);
  double f2 = support_value(t, x2);
  double best = std::max(f1, f2);
  for (int it = 0; it < kMaxGoldenIterations && (hi - lo) > tol; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = support_value(t, x2);
      best = std::max(best, f2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = support_value(t, x1);
      best = std::max(best, f1);
    }
  }
  return best;
}

}  // namespace

CMatrix hermitian_part(const CMatrix& t, double theta) {
  const std::size_t n = t.dim();
  const Complex rot = std::polar(1.0, -theta);
  CMatrix h(n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = (rot * t(i, i)).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (rot * t(i, j) + std::conj(rot * t(j, i)));
      h(i, j) = v;
      h(j, i) = std::conj(v);
    }
  }
  return h;
}

double support_value(const CMatrix& t, double theta) {
  return hermitian_max_eigenvalue(hermitian_part(t, theta));
}

BoundaryCurve boundary(const CMatrix& t, std::size_t n_angles) {
  if (n_angles < 8) {
    throw Error(ErrorCode::InvalidArgument, "boundary needs at least 8 angles, got " + std::to_string(n_angles));
  }
  BoundaryCurve curve;
  curve.samples.reserve(n_angles);
  for (std::size_t k = 0; k < n_angles; ++k) {
    const double theta = angle_on_grid(k, n_angles);
    const auto eig = hermitian_eig(hermitian_part(t, theta));
    const CVector& x = eig.eigenvectors.back();
    curve.samples.push_back({theta, eig.eigenvalues.back(), inner(t * x, x)});
  }
  return curve;
}

double numerical_radius(const CMatrix& t, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "numerical_radius tolerance must be positive");
  const std::size_t n = kRadiusGrid;
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = support_value(t, angle_on_grid(k, n));

  double best = *std::max_element(values.begin(), values.end());

  // Local maxima of the cyclic grid, highest first.
  std::vector<std::size_t> peaks;
  for (std::size_t k = 0; k < n; ++k) {
    const double prev = values[(k + n - 1) % n];
    const double next = values[(k + 1) % n];
    if (values[k] >= prev && values[k] >= next) peaks.push_back(k);
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (peaks.size() > kRefinedPeaks) peaks.resize(kRefinedPeaks);

  const double step = angle_on_grid(1, n);
  for (const std::size_t k : peaks) {
    const double centre = angle_on_grid(k, n);
    best = std::max(best, golden_section_max(t, centre - step, centre + step, tol));
  }
  return best;
}

bool contains(const CMatrix& t, Complex z, double tol, std::size_t n_angles) {
  if (n_angles < 64) {
    throw Error(ErrorCode::InvalidArgument, "contains needs at least 64 angles, got " + std::to_string(n_angles));
  }
  for (std::size_t k = 0; k < n_angles; ++k) {
    const double theta = angle_on_grid(k, n_angles);
    const double projection = (std::polar(1.0, -theta) * z).real();
    if (projection > support_value(t, theta) + tol) return false;
  }
  return true;
}

}  // namespace fov
