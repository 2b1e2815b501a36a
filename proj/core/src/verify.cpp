#include "fovkit/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <system_error>

#include <json.hpp>

#include "fovkit/errors.hpp"
#include "fovkit/io.hpp"
#include "fovkit/numrange.hpp"
#include "fovkit/regions.hpp"

namespace fov {

// ---------------------------------------------------------------------------
// Random model
// ---------------------------------------------------------------------------

double Rng::uniform() {
  // 53 random bits; independent of the standard library's distribution code
  // so that reports are identical across toolchains.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::size_t Rng::uniform_index(std::size_t lo, std::size_t hi) {
  const std::size_t span = hi - lo + 1;
  return lo + static_cast<std::size_t>(uniform() * static_cast<double>(span)) % span;
}

Complex Rng::unit_complex() { return std::polar(1.0, 2.0 * std::numbers::pi * uniform()); }

Complex Rng::disk_point(double radius) {
  const double r = radius * std::sqrt(uniform());
  return std::polar(r, 2.0 * std::numbers::pi * uniform());
}

CVector Rng::unit_vector(std::size_t dim) {
  CVector x(dim);
  double len = 0.0;
  while (len < 1e-3) {
    for (auto& z : x) z = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
    len = norm(x);
  }
  for (auto& z : x) z /= len;
  return x;
}

CMatrix Rng::matrix(std::size_t dim) {
  CMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = Complex(uniform(-1.0, 1.0), uniform(-1.0, 1.0));
  }
  return m;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(seed) ^ stream) ^ index);
}

CMatrix normalize_radius(const CMatrix& m) {
  const double w = numerical_radius(m);
  if (!(w > 0.0)) throw Error(ErrorCode::InvalidArgument, "cannot normalize a matrix with zero numerical radius");
  return m * Complex(1.0 / w);
}

CMatrix random_normalized(Rng& rng, std::size_t min_dim, std::size_t max_dim) {
  const std::size_t dim = rng.uniform_index(min_dim, max_dim);
  return normalize_radius(rng.matrix(dim));
}

BlaschkeProduct random_blaschke(Rng& rng, std::size_t max_degree) {
  const std::size_t degree = rng.uniform_index(1, max_degree);
  std::vector<Complex> zeros{0.0};
  for (std::size_t k = 1; k < degree; ++k) zeros.push_back(rng.disk_point(0.95));
  return BlaschkeProduct(rng.unit_complex(), std::move(zeros));
}

// ---------------------------------------------------------------------------
// Per-trial residuals
// ---------------------------------------------------------------------------

namespace {

constexpr double kBergerTol = 1e-7;
constexpr double kPowerTol = 1e-7;
constexpr double kLocalTol = 1e-9;
constexpr double kOperatorTol = 1e-8;
constexpr double kRegionTol = 1e-8;
constexpr double kDruryTol = 1e-6;

constexpr unsigned kDefaultPowerMax = 6;
constexpr std::size_t kDefaultRegionGrid = 21;
constexpr std::size_t kOperatorGrid = 21;
constexpr std::size_t kDruryAngles = 360;
constexpr std::size_t kMaxBlaschkeDegree = 5;
constexpr double kRetryScale = 0.999;
constexpr double kSharpnessOffset = 0.01;

const CMatrix& nilpotent_example() {
  static const CMatrix t{{0.0, 2.0}, {0.0, 0.0}};
  return t;
}

double berger_residual(const CMatrix& t, const DiskFunction& f) {
  return numerical_radius(eval_matrix(f, t)) - 1.0;
}

double power_residual(const CMatrix& t, unsigned n_max) {
  const double w = numerical_radius(t);
  double worst = -std::numeric_limits<double>::infinity();
  CMatrix power = t;
  for (unsigned n = 2; n <= n_max; ++n) {
    power = power * t;
    worst = std::max(worst, numerical_radius(power) - std::pow(w, static_cast<double>(n)));
  }
  return worst;
}

// Hermitian-angle form: ||Tx|| <= max(2 |sin theta|, sqrt 2).
double angle_form_residual(const CMatrix& t, std::span<const Complex> x) {
  const CVector tx = t * x;
  const double norm_tx = norm(tx);
  if (norm_tx == 0.0) return -std::numbers::sqrt2;
  const double cosine = std::min(1.0, std::abs(inner(tx, x)) / (norm_tx * norm(x)));
  const double sine = std::sqrt(std::max(0.0, 1.0 - cosine * cosine));
  return norm_tx - std::max(2.0 * sine, std::numbers::sqrt2);
}

// 2x2 compression form: |c| <= 1 + sqrt(1 - |a|^2) for the leading block [[a, b], [c, d]].
double corner_form_residual(const CMatrix& t) {
  const double a = std::abs(t(0, 0));
  const double c = std::abs(t(1, 0));
  return c - (1.0 + std::sqrt(std::max(0.0, 1.0 - a * a)));
}

double local_residual(const CMatrix& t, std::span<const Complex> x) {
  const auto terms = local_inequality_terms(t, x);
  return std::max({terms.norm_tx_squared - terms.bound, angle_form_residual(t, x), corner_form_residual(t)});
}

double props52_residual(const CMatrix& t, std::span<const Complex> x) {
  return std::max(angle_form_residual(t, x), corner_form_residual(t));
}

double operator_residual(const CMatrix& t) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < kOperatorGrid; ++k) {
    const double tc = 0.5 * static_cast<double>(k) / static_cast<double>(kOperatorGrid - 1);
    worst = std::max(worst, -is_psd(q_form(t, tc, tc * tc - 0.25), kOperatorTol).min_eigenvalue);
  }
  return worst;
}

std::vector<double> branch_grid(double lo, double hi, std::size_t n) {
  std::vector<double> grid(n);
  for (std::size_t k = 0; k < n; ++k) grid[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  return grid;
}

double region_residual(const CMatrix& t, std::size_t density) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& [lo, hi] : {std::pair{0.0, 0.5}, std::pair{0.5, 1.0}, std::pair{1.0, 3.0}}) {
    for (const double tc : branch_grid(lo, hi, density)) {
      worst = std::max(worst, -is_psd(q_form(t, tc, region_S_boundary(tc)), kRegionTol).min_eigenvalue);
    }
  }
  return worst;
}

struct DruryTerms {
  double teardrop_excess;
  double radius_excess;
};

DruryTerms drury_terms(const CMatrix& t, const DiskFunction& f) {
  const Complex alpha = eval_scalar(f, 0.0);
  const CMatrix ft = eval_matrix(f, t);
  double excess = -std::numeric_limits<double>::infinity();
  for (const auto& sample : boundary(ft, kDruryAngles).samples) {
    excess = std::max(excess, teardrop_excess(alpha, sample.point));
  }
  const double a = std::abs(alpha);
  return {excess, numerical_radius(ft) - (1.0 + a - a * a)};
}

class ReportBuilder {
 public:
  ReportBuilder(std::string_view suite, std::uint64_t seed, std::size_t trials, double tolerance) {
    report_.suite = std::string(suite);
    report_.seed = seed;
    report_.trials = trials;
    report_.tolerance = tolerance;
    report_.worst_residual = -std::numeric_limits<double>::infinity();
  }

  void record(double residual, Witness witness) {
    if (!(residual <= report_.tolerance)) ++report_.failures;
    if (!report_.witness || residual > report_.worst_residual || std::isnan(residual)) {
      report_.worst_residual = residual;
      report_.witness = std::move(witness);
    }
  }

  void fail() { ++report_.failures; }

  void stat(std::string name, double value) { report_.stats.emplace_back(std::move(name), value); }

  VerifyReport finish() {
    if (!report_.witness) report_.worst_residual = 0.0;
    report_.warning = report_.passed() && report_.worst_residual > 0.5 * report_.tolerance;
    return std::move(report_);
  }

 private:
  VerifyReport report_;
};

bool is_pole_error(const Error& e) { return e.code() == ErrorCode::PolesNearSpectrum; }

}  // namespace

LocalInequalityTerms local_inequality_terms(const CMatrix& t, std::span<const Complex> x) {
  const CVector tx = t * x;
  const double overlap = std::abs(inner(tx, x));
  return {std::norm(norm(tx)), 2.0 + 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap * overlap))};
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

VerifyReport check_berger_stampfli(std::size_t trials, std::uint64_t seed) {
  ReportBuilder builder("berger-stampfli", seed, trials, kBergerTol);
  std::size_t retries = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(trial_seed(seed, 1, k));
    const CMatrix t = random_normalized(rng);
    DiskFunction f = DiskFunction::blaschke(random_blaschke(rng, kMaxBlaschkeDegree));
    double residual;
    try {
      residual = berger_residual(t, f);
    } catch (const Error& e) {
      if (!is_pole_error(e)) throw;
      ++retries;
      f = DiskFunction::scale(kRetryScale, f);
      residual = berger_residual(t, f);
    }
    builder.record(residual, {t, f, {}, {}});
  }
  builder.stat("scale_retries", static_cast<double>(retries));
  return builder.finish();
}

VerifyReport check_power_inequality(std::size_t trials, unsigned n_max, std::uint64_t seed) {
  if (n_max < 2) throw Error(ErrorCode::InvalidArgument, "power suite needs n_max >= 2");
  ReportBuilder builder("power", seed, trials, kPowerTol);
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(trial_seed(seed, 2, k));
    const CMatrix t = random_normalized(rng);
    builder.record(power_residual(t, n_max), {t, std::nullopt, {}, {static_cast<double>(n_max)}});
  }
  builder.stat("n_max", n_max);
  return builder.finish();
}

VerifyReport check_local_inequality(std::size_t trials, std::uint64_t seed) {
  ReportBuilder builder("local-ineq", seed, trials, kLocalTol);
  double tightest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(trial_seed(seed, 3, k));
    const CMatrix t = random_normalized(rng);
    CVector x = rng.unit_vector(t.dim());
    const auto terms = local_inequality_terms(t, x);
    tightest = std::min(tightest, terms.bound - terms.norm_tx_squared);
    const double residual = local_residual(t, x);
    builder.record(residual, {t, std::nullopt, std::move(x), {}});
  }
  builder.stat("min_slack_norm_form", trials > 0 ? tightest : 0.0);
  return builder.finish();
}

VerifyReport check_props52(std::size_t trials, std::uint64_t seed) {
  ReportBuilder builder("props52", seed, trials, kLocalTol);
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(trial_seed(seed, 7, k));
    const CMatrix t = random_normalized(rng, 2, 2);
    CVector x = rng.unit_vector(2);
    const double residual = props52_residual(t, x);
    builder.record(residual, {t, std::nullopt, std::move(x), {}});
  }
  return builder.finish();
}

VerifyReport check_operator_inequality(std::size_t trials, std::uint64_t seed) {
  ReportBuilder builder("operator-ineq", seed, trials, kOperatorTol);
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(trial_seed(seed, 4, k));
    const CMatrix t = random_normalized(rng);
    builder.record(operator_residual(t), {t, std::nullopt, {}, {}});
  }
  builder.stat("t_grid", kOperatorGrid);
  return builder.finish();
}

VerifyReport check_region_S(std::size_t grid_density, std::size_t trials, std::uint64_t seed) {
  if (grid_density < 10) throw Error(ErrorCode::InvalidArgument, "region S grid density must be >= 10");
  ReportBuilder builder("region-s", seed, trials, kRegionTol);
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(trial_seed(seed, 5, k));
    const CMatrix t = random_normalized(rng);
    builder.record(region_residual(t, grid_density), {t, std::nullopt, {}, {static_cast<double>(grid_density)}});
  }

  // Below each branch, the counterexample operators from the three cases
  // must have w <= 1 and an indefinite Q.
  std::size_t sharpness_checks = 0;
  double highest_lambda = -std::numeric_limits<double>::infinity();
  auto expect_indefinite = [&](const CMatrix& t, double tc, double sc) {
    ++sharpness_checks;
    const double lambda = is_psd(q_form(t, tc, sc), kRegionTol).min_eigenvalue;
    highest_lambda = std::max(highest_lambda, lambda);
    if (!(lambda < 0.0) || numerical_radius(t) > 1.0 + 1e-12) builder.fail();
  };
  for (const double tc : branch_grid(0.0, 0.5, grid_density)) {
    expect_indefinite(nilpotent_example(), tc, tc * tc - 0.25 - kSharpnessOffset);
  }
  for (const double tc : branch_grid(0.5, 1.0, grid_density)) {
    expect_indefinite(-1.0 * CMatrix::identity(2), tc, 2.0 * tc - 1.0 - kSharpnessOffset);
  }
  // Case 3 needs t <= s < t^2 so that -(t/s) I has w <= 1.
  for (const double tc : branch_grid(1.1, 3.0, grid_density)) {
    const double sc = tc * tc - kSharpnessOffset;
    expect_indefinite(Complex(-tc / sc) * CMatrix::identity(2), tc, sc);
  }
  builder.stat("grid_density", static_cast<double>(grid_density));
  builder.stat("sharpness_checks", static_cast<double>(sharpness_checks));
  builder.stat("sharpness_max_lambda_min", highest_lambda);
  return builder.finish();
}

VerifyReport check_drury(std::size_t trials, std::uint64_t seed) {
  ReportBuilder builder("drury", seed, trials, kDruryTol);
  std::size_t retries = 0;
  double worst_teardrop = -std::numeric_limits<double>::infinity();
  double worst_radius = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < trials; ++k) {
    Rng rng(trial_seed(seed, 6, k));
    const CMatrix t = random_normalized(rng);
    const Complex alpha = rng.disk_point(0.95);
    DiskFunction f = DiskFunction::compose(MobiusAutomorphism(alpha).function(),
                                           DiskFunction::blaschke(random_blaschke(rng, kMaxBlaschkeDegree)));
    DruryTerms terms;
    try {
      terms = drury_terms(t, f);
    } catch (const Error& e) {
      if (!is_pole_error(e)) throw;
      ++retries;
      f = DiskFunction::scale(kRetryScale, f);
      terms = drury_terms(t, f);
    }
    worst_teardrop = std::max(worst_teardrop, terms.teardrop_excess);
    worst_radius = std::max(worst_radius, terms.radius_excess);
    builder.record(std::max(terms.teardrop_excess, terms.radius_excess), {t, f, {}, {}});
  }
  builder.stat("teardrop_points", static_cast<double>(trials * kDruryAngles));
  builder.stat("max_teardrop_excess", trials > 0 ? worst_teardrop : 0.0);
  builder.stat("max_radius_excess", trials > 0 ? worst_radius : 0.0);
  builder.stat("scale_retries", static_cast<double>(retries));
  return builder.finish();
}

std::vector<VerifyReport> run_suite(std::string_view name, std::size_t trials, std::uint64_t seed) {
  auto run_one = [&](std::string_view suite) -> VerifyReport {
    if (suite == "berger-stampfli") return check_berger_stampfli(trials, seed);
    if (suite == "power") return check_power_inequality(trials, kDefaultPowerMax, seed);
    if (suite == "local-ineq") return check_local_inequality(trials, seed);
    if (suite == "operator-ineq") return check_operator_inequality(trials, seed);
    if (suite == "region-s") return check_region_S(kDefaultRegionGrid, trials, seed);
    if (suite == "drury") return check_drury(trials, seed);
    if (suite == "props52") return check_props52(trials, seed);
    throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
  };
  std::vector<VerifyReport> reports;
  if (name == "all") {
    for (const auto suite : kSuiteNames) reports.push_back(run_one(suite));
  } else {
    reports.push_back(run_one(name));
  }
  return reports;
}

double witness_residual(std::string_view suite, const Witness& w) {
  auto need_function = [&]() -> const DiskFunction& {
    if (!w.function) throw Error(ErrorCode::InvalidArgument, "witness for suite '" + std::string(suite) + "' needs a function");
    return *w.function;
  };
  auto need_vector = [&]() -> std::span<const Complex> {
    if (w.vector.size() != w.matrix.dim()) throw Error(ErrorCode::InvalidArgument, "witness vector has the wrong length");
    return w.vector;
  };
  auto param = [&](std::size_t fallback) {
    return w.params.empty() ? fallback : static_cast<std::size_t>(std::lround(w.params.front()));
  };

  if (suite == "berger-stampfli") return berger_residual(w.matrix, need_function());
  if (suite == "power") return power_residual(w.matrix, static_cast<unsigned>(param(kDefaultPowerMax)));
  if (suite == "local-ineq") return local_residual(w.matrix, need_vector());
  if (suite == "props52") return props52_residual(w.matrix, need_vector());
  if (suite == "operator-ineq") return operator_residual(w.matrix);
  if (suite == "region-s") return region_residual(w.matrix, param(kDefaultRegionGrid));
  if (suite == "drury") {
    const auto terms = drury_terms(w.matrix, need_function());
    return std::max(terms.teardrop_excess, terms.radius_excess);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
}

// ---------------------------------------------------------------------------
// Extremal search
// ---------------------------------------------------------------------------

ExtremalResult extremal_search(const DiskFunction& f, std::size_t dim, std::size_t iterations, std::uint64_t seed,
                               std::span<const CMatrix> starts) {
  if (iterations == 0) throw Error(ErrorCode::InvalidArgument, "extremal search needs at least one iteration");
  if (dim == 0) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  for (const auto& s : starts) {
    if (s.dim() != dim) throw Error(ErrorCode::InvalidArgument, "start matrix has the wrong dimension");
  }

  constexpr double kInitialStep = 0.3;
  constexpr double kMinStep = 1e-4;
  constexpr int kMissesBeforeHalving = 20;

  Rng rng(trial_seed(seed, 8, 0));
  ExtremalResult result;
  result.best_w = -std::numeric_limits<double>::infinity();

  // Normalizes m into `normalized` and returns w(f(normalized)).
  auto objective = [&](const CMatrix& m, CMatrix& normalized) -> std::optional<double> {
    ++result.evaluations;
    try {
      const double w = numerical_radius(m);
      if (!(w > 1e-12)) {
        ++result.skipped;
        return std::nullopt;
      }
      normalized = m * Complex(1.0 / w);
      return numerical_radius(eval_matrix(f, normalized));
    } catch (const Error&) {
      ++result.skipped;
      return std::nullopt;
    }
  };
  auto offer = [&](double value, const CMatrix& t) {
    if (value > result.best_w) {
      result.best_w = value;
      result.witness = t;
    }
  };

  const std::size_t n_params = 2 * dim * dim;
  std::size_t restart = 0;
  while (result.evaluations < iterations) {
    const CMatrix start = restart < starts.size() ? starts[restart] : rng.matrix(dim);
    ++restart;
    CMatrix current;
    const auto initial = objective(start, current);
    if (!initial) continue;
    double value = *initial;
    offer(value, current);

    double step = kInitialStep;
    int misses = 0;
    while (step >= kMinStep && result.evaluations < iterations) {
      const std::size_t k = rng.uniform_index(0, n_params - 1);
      const Complex delta = (k % 2 == 0) ? Complex(step, 0.0) : Complex(0.0, step);
      bool improved = false;
      for (const double sign : {1.0, -1.0}) {
        CMatrix candidate = current;
        candidate(k / 2 / dim, (k / 2) % dim) += sign * delta;
        CMatrix normalized;
        const auto v = objective(candidate, normalized);
        if (v && *v > value) {
          current = std::move(normalized);
          value = *v;
          improved = true;
          break;
        }
        if (result.evaluations >= iterations) break;
      }
      if (improved) {
        misses = 0;
        offer(value, current);
      } else if (++misses >= kMissesBeforeHalving) {
        step *= 0.5;
        misses = 0;
      }
    }
  }
  if (result.witness.empty()) result.best_w = 0.0;
  return result;
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

namespace {

std::string join_complex(std::span<const Complex> values) {
  std::string out;
  for (const auto& z : values) {
    if (!out.empty()) out += ' ';
    out += format_complex(z);
  }
  return out;
}

std::string join_real(std::span<const double> values) {
  std::string out;
  for (const double v : values) {
    if (!out.empty()) out += ' ';
    out += format_real(v);
  }
  return out;
}

double parse_double(std::string_view text) {
  const Complex z = parse_complex(text);
  if (z.imag() != 0.0) throw Error(ErrorCode::InvalidArgument, "expected a real number, got '" + std::string(text) + "'");
  return z.real();
}

double parse_double_or_inf(std::string_view text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  return parse_double(text);
}

std::uint64_t parse_unsigned(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "expected an unsigned integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split_words(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ') ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

std::string real_or_special(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_real(v);
}

}  // namespace

std::string format_report(const VerifyReport& r) {
  std::string out;
  out += "suite: " + r.suite + "\n";
  out += "seed: " + std::to_string(r.seed) + "\n";
  out += "trials: " + std::to_string(r.trials) + "\n";
  out += "failures: " + std::to_string(r.failures) + "\n";
  out += "status: " + std::string(r.passed() ? "pass" : "FAIL") + "\n";
  out += "tolerance: " + format_real(r.tolerance) + "\n";
  out += "worst_residual: " + real_or_special(r.worst_residual) + "\n";
  out += "warning: " + std::string(r.warning ? "true" : "false") + "\n";
  for (const auto& [name, value] : r.stats) out += "stat." + name + ": " + real_or_special(value) + "\n";
  if (r.witness) {
    const Witness& w = *r.witness;
    out += "witness.matrix: " + format_matrix_inline(w.matrix) + "\n";
    if (w.function) out += "witness.function: " + format_function(*w.function) + "\n";
    if (!w.vector.empty()) out += "witness.vector: " + join_complex(w.vector) + "\n";
    if (!w.params.empty()) out += "witness.params: " + join_real(w.params) + "\n";
  }
  return out;
}

std::string format_reports(std::span<const VerifyReport> reports) {
  std::string out;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    if (k > 0) out += '\n';
    out += format_report(reports[k]);
  }
  return out;
}

std::string reports_to_json(std::span<const VerifyReport> reports) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["failures"] = r.failures;
    j["passed"] = r.passed();
    j["tolerance"] = r.tolerance;
    if (std::isfinite(r.worst_residual)) {
      j["worst_residual"] = r.worst_residual;
    } else {
      j["worst_residual"] = real_or_special(r.worst_residual);
    }
    j["warning"] = r.warning;
    nlohmann::ordered_json stats = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.stats) stats[name] = value;
    j["stats"] = stats;
    if (r.witness) {
      nlohmann::ordered_json w;
      w["matrix"] = format_matrix_inline(r.witness->matrix);
      if (r.witness->function) w["function"] = format_function(*r.witness->function);
      if (!r.witness->vector.empty()) w["vector"] = join_complex(r.witness->vector);
      if (!r.witness->params.empty()) w["params"] = r.witness->params;
      j["witness"] = w;
    }
    doc.push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::vector<VerifyReport> parse_reports(std::string_view text) {
  std::vector<VerifyReport> reports;
  std::optional<VerifyReport> current;
  std::size_t line_no = 0;
  auto flush = [&] {
    if (current) reports.push_back(std::move(*current));
    current.reset();
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    const std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (line.empty()) {
      flush();
      continue;
    }
    const std::size_t colon = line.find(": ");
    if (colon == std::string_view::npos) throw ParseError(line_no, 1, "expected 'key: value'");
    const std::string_view key = line.substr(0, colon);
    const std::string_view value = line.substr(colon + 2);
    try {
      if (key == "suite") {
        flush();
        current.emplace();
        current->suite = std::string(value);
        continue;
      }
      if (!current) throw ParseError(line_no, 1, "report block must start with 'suite:'");
      VerifyReport& r = *current;
      if (key == "seed") {
        r.seed = parse_unsigned(value);
      } else if (key == "trials") {
        r.trials = parse_unsigned(value);
      } else if (key == "failures") {
        r.failures = parse_unsigned(value);
      } else if (key == "status") {
        // derived from failures
      } else if (key == "tolerance") {
        r.tolerance = parse_double(value);
      } else if (key == "worst_residual") {
        r.worst_residual = parse_double_or_inf(value);
      } else if (key == "warning") {
        r.warning = value == "true";
      } else if (key.starts_with("stat.")) {
        r.stats.emplace_back(std::string(key.substr(5)), parse_double_or_inf(value));
      } else if (key == "witness.matrix") {
        if (!r.witness) r.witness.emplace();
        r.witness->matrix = parse_matrix_inline(value);
      } else if (key == "witness.function") {
        if (!r.witness) r.witness.emplace();
        r.witness->function = parse_function(value);
      } else if (key == "witness.vector") {
        if (!r.witness) r.witness.emplace();
        for (const auto word : split_words(value)) r.witness->vector.push_back(parse_complex(word));
      } else if (key == "witness.params") {
        if (!r.witness) r.witness.emplace();
        for (const auto word : split_words(value)) r.witness->params.push_back(parse_double(word));
      } else {
        throw ParseError(line_no, 1, "unknown key '" + std::string(key) + "'");
      }
    } catch (const ParseError& e) {
      if (e.line() == line_no) throw;
      throw ParseError(line_no, colon + 3, e.what());
    } catch (const Error& e) {
      throw ParseError(line_no, colon + 3, e.what());
    }
  }
  flush();
  return reports;
}

}  // namespace fov
