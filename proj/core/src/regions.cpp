#include "fovkit/regions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fovkit/errors.hpp"

namespace fov {

namespace {

constexpr std::size_t kTeardropGrid = 720;
constexpr double kSeamSlack = 1e-12;

void require_teardrop_alpha(Complex alpha) {
  if (!(std::abs(alpha) <= 1.0 + kSeamSlack)) {
    throw Error(ErrorCode::InvalidArgument, "teardrop parameter must satisfy |alpha| <= 1");
  }
}

void require_real_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::DomainError, "alpha must lie in [0, 1), got " + std::to_string(alpha));
  }
}

double projection(Complex z, double phi) { return (std::polar(1.0, -phi) * z).real(); }

}  // namespace

double teardrop_support(Complex alpha, double phi) {
  require_teardrop_alpha(alpha);
  return std::max(1.0, projection(alpha, phi) + 1.0 - std::norm(alpha));
}

double teardrop_excess(Complex alpha, Complex z) {
  require_teardrop_alpha(alpha);
  auto excess_at = [&](double phi) { return projection(z, phi) - teardrop_support(alpha, phi); };
  double worst = std::max(excess_at(std::arg(z)), excess_at(std::arg(z - alpha)));
  for (std::size_t k = 0; k < kTeardropGrid; ++k) {
    const double phi = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(kTeardropGrid);
    worst = std::max(worst, excess_at(phi));
  }
  return worst;
}

bool teardrop_contains(Complex alpha, Complex z, double tol) { return teardrop_excess(alpha, z) <= tol; }

std::vector<TeardropPoint> teardrop_boundary(Complex alpha, std::size_t n) {
  require_teardrop_alpha(alpha);
  if (n < 8) throw Error(ErrorCode::InvalidArgument, "teardrop boundary needs at least 8 directions");
  const double modulus = std::abs(alpha);
  const double radius = std::max(0.0, 1.0 - modulus * modulus);
  const double two_pi = 2.0 * std::numbers::pi;

  // The small disk supports td(alpha) for cos(phi - arg alpha) > |alpha|.
  auto small_disk_wins = [&](double phi) {
    return projection(alpha, phi) + radius > 1.0 && modulus > 0.0 && modulus < 1.0;
  };
  auto support_point = [&](double phi) {
    return small_disk_wins(phi) ? alpha + std::polar(radius, phi) : std::polar(1.0, phi);
  };

  std::vector<TeardropPoint> points;
  points.reserve(n + 4);
  for (std::size_t k = 0; k < n; ++k) {
    const double phi = two_pi * static_cast<double>(k) / static_cast<double>(n);
    points.push_back({phi, support_point(phi)});
  }
  if (modulus > 0.0 && modulus < 1.0) {
    const double half_width = std::acos(modulus);
    auto wrap = [&](double phi) { return std::fmod(std::fmod(phi, two_pi) + two_pi, two_pi); };
    const double enter = wrap(std::arg(alpha) - half_width);
    const double leave = wrap(std::arg(alpha) + half_width);
    points.push_back({enter, std::polar(1.0, enter)});
    points.push_back({enter, alpha + std::polar(radius, enter)});
    points.push_back({leave, alpha + std::polar(radius, leave)});
    points.push_back({leave, std::polar(1.0, leave)});
    std::stable_sort(points.begin(), points.end(),
                     [](const TeardropPoint& a, const TeardropPoint& b) { return a.phi < b.phi; });
  }
  return points;
}

double region_S_boundary(double t) {
  if (t < 0.0) throw Error(ErrorCode::NegativeT, "region S requires t >= 0, got " + std::to_string(t));
  if (t <= 0.5) return t * t - 0.25;
  if (t <= 1.0) return 2.0 * t - 1.0;
  return t * t;
}

bool region_S_contains(double t, double s) { return s >= region_S_boundary(t); }

CMatrix q_form(const CMatrix& t, double t_coeff, double s_coeff) {
  const std::size_t n = t.dim();
  const CMatrix gram = t.adjoint() * t;
  CMatrix q(n);
  for (std::size_t i = 0; i < n; ++i) {
    q(i, i) = 1.0 + 2.0 * t_coeff * t(i, i).real() + s_coeff * gram(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = t_coeff * (t(i, j) + std::conj(t(j, i))) + s_coeff * gram(i, j);
      q(i, j) = v;
      q(j, i) = std::conj(v);
    }
  }
  return q;
}

DruryParams drury_params_outer(double alpha, double theta) {
  require_real_alpha(alpha);
  const double c = std::cos(theta);
  if (c > alpha + kSeamSlack) {
    throw Error(ErrorCode::DomainError, "outer branch requires cos(theta) <= alpha");
  }
  const double dist2 = 1.0 - 2.0 * alpha * c + alpha * alpha;
  const double shrink = 1.0 - alpha * c;
  const Complex numerator = 2.0 * alpha - std::polar(1.0, theta) - alpha * alpha * std::polar(1.0, -theta);
  return {numerator / dist2, dist2 / (2.0 * shrink), alpha * (alpha - c) / shrink};
}

DruryParams drury_params_inner(double alpha, double theta) {
  require_real_alpha(alpha);
  const double c = std::cos(theta);
  if (c < alpha - kSeamSlack) {
    throw Error(ErrorCode::DomainError, "inner branch requires cos(theta) >= alpha");
  }
  double radicand = alpha * (alpha - c) + 0.25;
  if (radicand < -kSeamSlack) {
    throw Error(ErrorCode::NegativeRadicand, "alpha (alpha - cos theta) + 1/4 = " + std::to_string(radicand));
  }
  radicand = std::max(radicand, 0.0);
  const double t = std::sqrt(radicand);
  const Complex numerator = 2.0 * alpha - std::polar(1.0, -theta);
  Complex omega = 1.0;
  if (2.0 * t > 1e-9) {
    omega = numerator / (2.0 * t);
  } else if (std::abs(numerator) > 0.0) {
    omega = numerator / std::abs(numerator);
  }
  return {omega, t, alpha * (alpha - c)};
}

}  // namespace fov
