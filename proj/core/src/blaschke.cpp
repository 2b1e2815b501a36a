#include "fovkit/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fovkit/errors.hpp"

namespace fov {

namespace {

constexpr double kUnimodularTol = 1e-12;
constexpr double kZeroMargin = 1e-12;
constexpr double kPoleTol = 1e-14;
constexpr double kCircleTol = 1e-9;
constexpr std::size_t kArgumentGrid = 4096;
constexpr int kMaxRefineDepth = 60;
constexpr double kBisectionTol = 1e-13;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_on_circle(Complex z, const char* what) {
  if (std::abs(std::abs(z) - 1.0) > kCircleTol) {
    throw Error(ErrorCode::NotOnCircle, std::string(what) + " must have modulus 1");
  }
}

struct PhaseSample {
  double t;
  double raw;        // arg B(e^{it}) in (-pi, pi]
  double unwrapped;  // continuous argument
};

double phase_at(const BlaschkeProduct& b, double t) { return std::arg(eval(b, std::polar(1.0, t))); }

double derivative_at(const BlaschkeProduct& b, double t) {
  return circle_log_derivative(b, std::polar(1.0, t));
}

// Appends samples strictly after `left` up to and including `right`, splitting
// the interval until the argument moves by at most pi/2 across each piece.
void append_refined(const BlaschkeProduct& b, const PhaseSample& left, double t_right, double raw_right,
                    int depth, std::vector<PhaseSample>& out) {
  const double h = t_right - left.t;
  const double wrapped = std::remainder(raw_right - left.raw, kTwoPi);
  const double estimate =
      h * (derivative_at(b, left.t) + 4.0 * derivative_at(b, left.t + 0.5 * h) + derivative_at(b, t_right)) /
      6.0;
  const bool too_coarse = wrapped < 0.0 || wrapped > std::numbers::pi / 2 || estimate > std::numbers::pi / 2;
  if (too_coarse && depth < kMaxRefineDepth) {
    const double t_mid = left.t + 0.5 * h;
    const double raw_mid = phase_at(b, t_mid);
    append_refined(b, left, t_mid, raw_mid, depth + 1, out);
    const PhaseSample mid = out.back();
    append_refined(b, mid, t_right, raw_right, depth + 1, out);
    return;
  }
  out.push_back({t_right, raw_right, left.unwrapped + wrapped});
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(Complex constant, std::vector<Complex> zeros)
    : constant_(constant), zeros_(std::move(zeros)) {
  if (zeros_.empty()) throw Error(ErrorCode::InvalidArgument, "Blaschke product needs at least one zero");
  if (std::abs(std::abs(constant_) - 1.0) > kUnimodularTol) {
    throw Error(ErrorCode::NotUnimodular, "Blaschke constant must have modulus 1");
  }
  for (const auto& a : zeros_) {
    if (!(std::abs(a) <= 1.0 - kZeroMargin)) {
      throw Error(ErrorCode::InvalidArgument, "Blaschke zeros must lie in the open unit disk");
    }
  }
}

bool BlaschkeProduct::vanishes_at_origin() const {
  return std::any_of(zeros_.begin(), zeros_.end(), [](Complex a) { return std::abs(a) <= kZeroMargin; });
}

Complex eval(const BlaschkeProduct& b, Complex z) {
  Complex value = b.constant();
  for (const auto& a : b.zeros()) {
    const Complex den = 1.0 - std::conj(a) * z;
    if (std::abs(den) < kPoleTol) throw Error(ErrorCode::PoleHit, "evaluation point at a pole");
    value *= (a - z) / den;
  }
  return value;
}

double circle_log_derivative(const BlaschkeProduct& b, Complex zeta) {
  require_on_circle(zeta, "zeta");
  double sum = 0.0;
  for (const auto& a : b.zeros()) sum += (1.0 - std::norm(a)) / std::norm(zeta - a);
  return sum;
}

std::vector<Complex> level_set(const BlaschkeProduct& b, Complex gamma) {
  if (std::abs(std::abs(gamma) - 1.0) > kCircleTol) {
    throw Error(ErrorCode::NotUnimodular, "gamma must have modulus 1");
  }
  const std::size_t n = b.degree();

  std::vector<PhaseSample> samples;
  samples.reserve(kArgumentGrid + 1);
  const double raw0 = phase_at(b, 0.0);
  samples.push_back({0.0, raw0, raw0});
  for (std::size_t j = 1; j <= kArgumentGrid; ++j) {
    const double t = kTwoPi * static_cast<double>(j) / static_cast<double>(kArgumentGrid);
    const PhaseSample left = samples.back();
    append_refined(b, left, t, j == kArgumentGrid ? raw0 : phase_at(b, t), 0, samples);
  }

  const double total = samples.back().unwrapped - samples.front().unwrapped;
  if (std::abs(total - kTwoPi * static_cast<double>(n)) > 1e-6) {
    throw Error(ErrorCode::BisectionFailure,
                "unwrapped argument increased by " + std::to_string(total) + ", expected 2*pi*" +
                    std::to_string(n));
  }

  const double offset = std::fmod(std::arg(gamma) - raw0 + 2.0 * kTwoPi, kTwoPi);
  std::vector<Complex> roots;
  roots.reserve(n);
  std::size_t j = 0;
  for (std::size_t m = 0; m < n; ++m) {
    const double target = raw0 + offset + kTwoPi * static_cast<double>(m);
    while (j + 2 < samples.size() && samples[j + 1].unwrapped < target) ++j;
    const PhaseSample& left = samples[j];
    const PhaseSample& right = samples[j + 1];
    if (!(left.unwrapped <= target && (target <= right.unwrapped || j + 2 == samples.size()))) {
      throw Error(ErrorCode::BisectionFailure, "no bracketing interval for level " + std::to_string(m));
    }

    auto local = [&](double t) { return left.unwrapped + std::remainder(phase_at(b, t) - left.raw, kTwoPi); };
    double lo = left.t;
    double hi = right.t;
    while (hi - lo > kBisectionTol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (local(mid) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    double t = 0.5 * (lo + hi);
    // Newton on the phase, kept inside the bracket, removes the bisection floor.
    const double level = std::arg(gamma);
    double miss = std::remainder(phase_at(b, t) - level, kTwoPi);
    for (int polish = 0; polish < 2 && miss != 0.0; ++polish) {
      const double next = t - miss / circle_log_derivative(b, std::polar(1.0, t));
      if (!(next >= left.t && next <= right.t)) break;
      const double next_miss = std::remainder(phase_at(b, next) - level, kTwoPi);
      if (!(std::abs(next_miss) < std::abs(miss))) break;
      t = next;
      miss = next_miss;
    }
    if (t >= kTwoPi) t -= kTwoPi;
    roots.push_back(std::polar(1.0, t));
  }
  return roots;
}

double ClarkDecomposition::total_weight() const {
  double sum = 0.0;
  for (const auto& atom : atoms) sum += atom.weight;
  return sum;
}

Complex ClarkDecomposition::expansion(Complex z) const {
  Complex sum = 0.0;
  for (const auto& atom : atoms) sum += atom.weight / (1.0 - std::conj(atom.zeta) * z);
  return sum;
}

ClarkDecomposition clark_decomposition(const BlaschkeProduct& b, Complex gamma) {
  if (!b.vanishes_at_origin()) {
    throw Error(ErrorCode::RequiresVanishingAtZero, "Clark decomposition requires a zero at the origin");
  }
  ClarkDecomposition out{gamma, {}};
  for (const auto& zeta : level_set(b, gamma)) {
    out.atoms.push_back({zeta, 1.0 / circle_log_derivative(b, zeta)});
  }
  return out;
}

double clark_residual(const BlaschkeProduct& b, const ClarkDecomposition& d, std::span<const Complex> points) {
  double worst = 0.0;
  for (const auto& z : points) {
    const Complex lhs = 1.0 / (1.0 - std::conj(d.gamma) * eval(b, z));
    worst = std::max(worst, std::abs(lhs - d.expansion(z)));
  }
  return worst;
}

std::vector<Complex> disk_sample_points(std::size_t n, double radius) {
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Complex> points;
  points.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = radius * std::sqrt((static_cast<double>(j) + 0.5) / static_cast<double>(n));
    points.push_back(std::polar(r, golden_angle * static_cast<double>(j)));
  }
  return points;
}

}  // namespace fov
