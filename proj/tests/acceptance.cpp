// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fovkit/blaschke.hpp"
#include "fovkit/calculus.hpp"
#include "fovkit/linalg.hpp"
#include "fovkit/numrange.hpp"
#include "fovkit/regions.hpp"
#include "fovkit/verify.hpp"

using namespace fov;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

bool run_criterion(int id, const char* title, double budget_seconds, const std::function<Check()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Check check;
  try {
    check = body();
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= budget_seconds) check.require(false, "runtime budget exceeded");
  std::printf("[%s] %d %s (%.2f s, budget %.0f s)%s%s\n", check.ok ? "PASS" : "FAIL", id, title, seconds,
              budget_seconds, check.detail.empty() ? "" : ": ", check.detail.c_str());
  std::fflush(stdout);
  return check.ok;
}

const CMatrix& jordan() {
  static const CMatrix t{{0.0, 2.0}, {0.0, 0.0}};
  return t;
}

Check nilpotent_example() {
  Check c;
  c.require(std::abs(operator_norm(jordan()) - 2.0) <= 1e-9, "operator norm");
  c.require(std::abs(numerical_radius(jordan()) - 1.0) <= 1e-9, "numerical radius");
  const auto curve = boundary(jordan(), 360);
  c.require(curve.samples.size() == 360, "sample count");
  for (const auto& s : curve.samples) c.require(std::abs(std::abs(s.point) - 1.0) <= 1e-8, "boundary off circle");
  return c;
}

Check sharp_teardrop() {
  Check c;
  const auto f = DiskFunction::mobius(1.0, -2.0, 2.0, -1.0);
  const CMatrix ft = eval_matrix(f, jordan());
  const CMatrix expected = Complex(0.5) * CMatrix::identity(2) - Complex(0.75) * jordan();
  c.require(max_abs_diff(ft, expected) <= 1e-12, "f(T) != I/2 - 3T/4");
  const double w = numerical_radius(ft);
  const double alpha = std::abs(eval_scalar(f, 0.0));
  c.require(std::abs(w - 1.25) <= 1e-9, "w(f(T)) != 5/4");
  c.require(std::abs(w - (1.0 + alpha - alpha * alpha)) <= 1e-9, "bound not attained");
  for (const auto& s : boundary(ft, 360).samples) {
    c.require(teardrop_excess(0.5, s.point) <= 1e-6, "boundary point outside teardrop");
  }
  return c;
}

Check clark_measures() {
  Check c;
  const auto points = disk_sample_points(100, 0.9);
  for (std::uint64_t k = 0; k < 100; ++k) {
    Rng rng(trial_seed(kSeed, 100, k));
    const auto b = random_blaschke(rng, 6);
    const auto d = clark_decomposition(b, rng.unit_complex());
    for (const auto& atom : d.atoms) c.require(atom.weight > 0.0, "non-positive weight");
    c.require(d.atoms.size() == b.degree(), "atom count");
    c.require(std::abs(d.total_weight() - 1.0) <= 1e-10, "weights do not sum to 1");
    c.require(clark_residual(b, d, points) < 1e-9, "expansion residual");
  }
  return c;
}

Check local_inequality() {
  Check c;
  const auto r = check_local_inequality(10000, kSeed);
  c.require(r.failures == 0, std::to_string(r.failures) + " violations");
  const std::vector<Complex> x{0.0, 1.0};
  const auto terms = local_inequality_terms(jordan(), x);
  c.require(std::abs(terms.norm_tx_squared - 4.0) <= 1e-12 && std::abs(terms.bound - 4.0) <= 1e-12,
            "equality witness");
  return c;
}

Check operator_inequality() {
  Check c;
  const auto op = check_operator_inequality(100, kSeed);
  c.require(op.failures == 0, "operator inequality violated");
  const auto region = check_region_S(21, 100, kSeed);
  c.require(region.failures == 0, "region S check failed");
  const CMatrix q = q_form(jordan(), 0.5, -0.01);
  const Complex det = q(0, 0) * q(1, 1) - q(0, 1) * q(1, 0);
  c.require(std::abs(det.real() + 0.04) <= 1e-12, "case 1 determinant");
  c.require(is_psd(q, 1e-8).min_eigenvalue < 0.0, "case 1 not indefinite");
  for (const auto& [name, value] : region.stats) {
    if (name == "sharpness_max_lambda_min") c.require(value < 0.0, "sharpness witness is PSD");
  }
  return c;
}

Check drury_identities() {
  Check c;
  for (int i = 0; i < 50; ++i) {
    const double alpha = 0.98 * i / 49.0;
    for (int j = 0; j < 50; ++j) {
      const double cosine = -1.0 + 2.0 * j / 49.0;
      const double theta = std::acos(cosine);
      if (cosine <= alpha) {
        const auto p = drury_params_outer(alpha, theta);
        c.require(p.t >= 0.5 - 1e-12 && p.t <= 1.0 + 1e-12, "outer t range");
        c.require(std::abs(p.s - (2.0 * p.t - 1.0)) <= 1e-12, "outer s = 2t - 1");
        c.require(std::abs(std::abs(p.omega) - 1.0) <= 1e-12, "outer omega");
      }
      if (cosine >= alpha) {
        const auto p = drury_params_inner(alpha, theta);
        c.require(p.t >= -1e-12 && p.t <= 0.5 + 1e-12, "inner t range");
        c.require(std::abs(p.s - (p.t * p.t - 0.25)) <= 1e-12, "inner s = t^2 - 1/4");
        c.require(std::abs(std::abs(p.omega) - 1.0) <= 1e-12, "inner omega");
      }
    }
    const auto outer = drury_params_outer(alpha, std::acos(alpha));
    const auto inner = drury_params_inner(alpha, std::acos(alpha));
    c.require(std::abs(outer.t - inner.t) <= 1e-12 && std::abs(outer.s - inner.s) <= 1e-12, "seam mismatch");
  }
  return c;
}

Check mapping_and_power() {
  Check c;
  const auto berger = check_berger_stampfli(1000, kSeed);
  c.require(berger.failures == 0, "mapping theorem violations: " + std::to_string(berger.failures));
  const auto power = check_power_inequality(1000, 6, kSeed);
  c.require(power.failures == 0, "power inequality violations: " + std::to_string(power.failures));
  return c;
}

Check full_verify_reproducible() {
  Check c;
  const std::vector<std::string> args{"verify", "--suite", "all", "--trials", "500", "--seed", "42"};
  std::string outputs[2];
  for (auto& text : outputs) {
    const auto start = std::chrono::steady_clock::now();
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(code == 0, "exit code " + std::to_string(code));
    c.require(seconds < 120.0, "single run over 120 s");
    text = out.str();
  }
  c.require(!outputs[0].empty() && outputs[0] == outputs[1], "rerun differs");
  return c;
}

}  // namespace

int main() {
  bool ok = true;
  ok &= run_criterion(1, "nilpotent example: norm, radius, boundary", 1.0, nilpotent_example);
  ok &= run_criterion(2, "sharp teardrop witness at alpha = 1/2", 1.0, sharp_teardrop);
  ok &= run_criterion(3, "Clark decomposition of 100 random products", 5.0, clark_measures);
  ok &= run_criterion(4, "local inequality, 10^4 trials", 30.0, local_inequality);
  ok &= run_criterion(5, "operator inequality and region S sharpness", 20.0, operator_inequality);
  ok &= run_criterion(6, "parameter map identities on 50x50 grid", 1.0, drury_identities);
  ok &= run_criterion(7, "mapping theorem and power inequality, 1000 trials each", 60.0, mapping_and_power);
  ok &= run_criterion(8, "verify --suite all --trials 500 --seed 42, twice", 240.0, full_verify_reproducible);
  std::printf("%s\n", ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
  return ok ? 0 : 1;
}
