#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <system_error>

#include <CLI11.hpp>

#include "fovkit/blaschke.hpp"
#include "fovkit/calculus.hpp"
#include "fovkit/errors.hpp"
#include "fovkit/io.hpp"
#include "fovkit/numrange.hpp"
#include "fovkit/regions.hpp"
#include "fovkit/verify.hpp"

namespace fov::cli {

namespace {

constexpr std::uint64_t kFallbackSeed = 42;
constexpr int kCsvDigits = 17;

// Thrown for bad flags or inputs detected by the front end itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
      return kExitUsage;
    case ErrorCode::RequiresVanishingAtZero:
    case ErrorCode::AlphaOnCircle:
    case ErrorCode::DomainError:
    case ErrorCode::NegativeT:
    case ErrorCode::NotUnimodular:
    case ErrorCode::NotOnCircle:
      return kExitPrecondition;
    default:
      return kExitNumeric;
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("NUMRANGE_SEED");
  if (env == nullptr || *env == '\0') return kFallbackSeed;
  const std::string_view text(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("NUMRANGE_SEED must be an unsigned integer, got '" + std::string(text) + "'");
  }
  return value;
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CMatrix read_matrix(const std::string& path) {
  try {
    return parse_matrix(read_input(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << text;
}

std::string fixed15(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(15);
  os << std::fixed << x;
  return os.str();
}

// SVG canvas: 800 x 800 px covering [-2, 2]^2.
struct SvgCanvas {
  static double px(double re) { return (re + 2.0) * 200.0; }
  static double py(double im) { return (2.0 - im) * 200.0; }

  static std::string document(const std::vector<Complex>& outline, const std::string& title) {
    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
    svg += "  <title>" + title + "</title>\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" style=\"fill:#ffffff\"/>\n";
    svg += "  <line x1=\"0\" y1=\"400\" x2=\"800\" y2=\"400\" style=\"stroke:#bbbbbb;stroke-width:1\"/>\n";
    svg += "  <line x1=\"400\" y1=\"0\" x2=\"400\" y2=\"800\" style=\"stroke:#bbbbbb;stroke-width:1\"/>\n";
    svg += "  <circle cx=\"400\" cy=\"400\" r=\"200\" style=\"fill:none;stroke:#888888;stroke-width:1;stroke-dasharray:4 4\"/>\n";
    svg += "  <polygon points=\"";
    for (std::size_t k = 0; k < outline.size(); ++k) {
      if (k > 0) svg += ' ';
      svg += format_significant(px(outline[k].real()), 8) + ',' + format_significant(py(outline[k].imag()), 8);
    }
    svg += "\" style=\"fill:#1f77b4;fill-opacity:0.2;stroke:#1f77b4;stroke-width:2\"/>\n";
    svg += "</svg>\n";
    return svg;
  }
};

std::string csv_number(double x) { return format_significant(x, kCsvDigits); }

// ---------------------------------------------------------------------------

struct RangeOptions {
  std::string matrix_path;
  std::size_t angles = 360;
  std::string format = "csv";
  std::string output;
};

int cmd_range(const RangeOptions& o, std::ostream& out) {
  const CMatrix t = read_matrix(o.matrix_path);
  const BoundaryCurve curve = boundary(t, o.angles);
  std::string text;
  if (o.format == "csv") {
    text = "theta,support,re,im\n";
    for (const auto& s : curve.samples) {
      text += csv_number(s.theta) + ',' + csv_number(s.support) + ',' + csv_number(s.point.real()) + ',' +
              csv_number(s.point.imag()) + '\n';
    }
  } else {
    std::vector<Complex> outline;
    for (const auto& s : curve.samples) outline.push_back(s.point);
    text = SvgCanvas::document(outline, "numerical range");
  }
  emit(text, o.output, out);
  return kExitOk;
}

struct RadiusOptions {
  std::string matrix_path;
  double tol = kDefaultTol;
};

int cmd_radius(const RadiusOptions& o, std::ostream& out) {
  if (!(o.tol > 0.0)) throw UsageError("--tol must be positive");
  out << fixed15(numerical_radius(read_matrix(o.matrix_path), o.tol)) << '\n';
  return kExitOk;
}

struct ApplyOptions {
  std::string function;
  std::string matrix_path;
  std::string output;
};

int cmd_apply(const ApplyOptions& o, std::ostream& out) {
  const DiskFunction f = parse_function(o.function);
  emit(format_matrix(eval_matrix(f, read_matrix(o.matrix_path))), o.output, out);
  return kExitOk;
}

struct ClarkOptions {
  std::string function;
  std::string gamma = "1";
  std::size_t check_points = 100;
  std::size_t random_degree = 0;
  std::optional<std::uint64_t> seed;
};

int cmd_clark(const ClarkOptions& o, std::ostream& out) {
  const Complex gamma = parse_complex(o.gamma);
  std::optional<BlaschkeProduct> product;
  if (o.random_degree > 0) {
    if (!o.function.empty()) throw UsageError("give either a function expression or --random-degree, not both");
    Rng rng(trial_seed(o.seed.value_or(default_seed()), 9, 0));
    std::vector<Complex> zeros{0.0};
    for (std::size_t k = 1; k < o.random_degree; ++k) zeros.push_back(rng.disk_point(0.95));
    product.emplace(rng.unit_complex(), std::move(zeros));
  } else {
    if (o.function.empty()) throw UsageError("clark needs a blaschke expression or --random-degree");
    const DiskFunction f = parse_function(o.function);
    const auto* node = std::get_if<DiskFunction::Blaschke>(&f.node());
    if (node == nullptr) throw UsageError("clark expects a 'blaschke ...' expression");
    product.emplace(node->product);
  }

  const ClarkDecomposition d = clark_decomposition(*product, gamma);
  out << "function: " << format_function(DiskFunction::blaschke(*product)) << '\n';
  out << "gamma: " << format_complex(gamma) << '\n';
  out << "atoms: " << d.atoms.size() << '\n';
  for (const auto& atom : d.atoms) {
    out << "zeta: " << format_complex(atom.zeta) << " weight: " << format_real(atom.weight) << '\n';
  }
  out << "sum_weights: " << format_real(d.total_weight()) << '\n';
  const auto points = disk_sample_points(o.check_points, 0.9);
  out << "max_residual: " << format_real(clark_residual(*product, d, points)) << '\n';
  return kExitOk;
}

struct TeardropOptions {
  std::string alpha;
  std::string format = "csv";
  std::size_t points = 720;
  std::string output;
};

int cmd_teardrop(const TeardropOptions& o, std::ostream& out) {
  Complex alpha;
  try {
    alpha = parse_complex(o.alpha);
  } catch (const Error& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
  if (std::abs(alpha) > 1.0) throw UsageError("--alpha must satisfy |alpha| <= 1");
  if (o.points < 8) throw UsageError("--points must be at least 8");
  const auto boundary_points = teardrop_boundary(alpha, o.points);
  std::string text;
  if (o.format == "csv") {
    text = "phi,re,im\n";
    for (const auto& p : boundary_points) {
      text += csv_number(p.phi) + ',' + csv_number(p.point.real()) + ',' + csv_number(p.point.imag()) + '\n';
    }
  } else {
    std::vector<Complex> outline;
    for (const auto& p : boundary_points) outline.push_back(p.point);
    text = SvgCanvas::document(outline, "teardrop(" + format_complex(alpha) + ")");
  }
  emit(text, o.output, out);
  return kExitOk;
}

struct VerifyOptions {
  std::string suite = "all";
  std::size_t trials = 500;
  std::optional<std::uint64_t> seed;
  bool json = false;
  std::string output;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  const auto reports = run_suite(o.suite, o.trials, o.seed.value_or(default_seed()));
  emit(o.json ? reports_to_json(reports) : format_reports(reports), o.output, out);
  std::size_t failures = 0;
  for (const auto& r : reports) {
    failures += r.failures;
    if (r.warning) err << "warning: suite " << r.suite << " worst residual exceeds half its tolerance\n";
  }
  err << "verify: " << reports.size() << " suite(s), " << failures << " failure(s)\n";
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

struct SearchOptions {
  std::string function;
  std::size_t dim = 2;
  std::size_t iters = 2000;
  std::optional<std::uint64_t> seed;
  std::string witness_path;
  bool no_builtin = false;
};

int cmd_search(const SearchOptions& o, std::ostream& out) {
  if (o.dim < 2) throw UsageError("--dim must be at least 2");
  if (o.iters == 0) throw UsageError("--iters must be positive");
  const DiskFunction f = parse_function(o.function);
  std::vector<CMatrix> starts;
  if (!o.no_builtin) {
    // Nilpotent Jordan block scaled to w = 1: W is the closed unit disk.
    CMatrix seed_matrix(o.dim);
    seed_matrix(0, 1) = 2.0;
    starts.push_back(seed_matrix);
  }
  const auto result = extremal_search(f, o.dim, o.iters, o.seed.value_or(default_seed()), starts);
  out << "best_w: " << fixed15(result.best_w) << '\n';
  out << "evaluations: " << result.evaluations << '\n';
  out << "skipped: " << result.skipped << '\n';
  if (result.witness.empty()) return kExitNumeric;
  if (o.witness_path.empty()) {
    out << format_matrix(result.witness);
  } else {
    emit(format_matrix(result.witness), o.witness_path, out);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical ranges and numerical radii of small complex matrices", "fovkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fovkit 0.1.0");

  RangeOptions range;
  auto* range_cmd = app.add_subcommand("range", "Sample the boundary of W(T) (CSV or SVG)");
  range_cmd->add_option("matrix", range.matrix_path, "Matrix file ('-' for stdin)")->required();
  range_cmd->add_option("--angles", range.angles, "Number of support directions")->check(CLI::Range(8, 1 << 20));
  range_cmd->add_option("--out", range.format, "Output format")->check(CLI::IsMember({"csv", "svg"}));
  range_cmd->add_option("-o,--output", range.output, "Output file (default stdout)");

  RadiusOptions radius;
  auto* radius_cmd = app.add_subcommand("radius", "Print the numerical radius w(T)");
  radius_cmd->add_option("matrix", radius.matrix_path, "Matrix file ('-' for stdin)")->required();
  radius_cmd->add_option("--tol", radius.tol, "Angular refinement tolerance");

  ApplyOptions apply;
  auto* apply_cmd = app.add_subcommand("apply", "Evaluate f(T) and print it as a matrix file");
  apply_cmd->add_option("function", apply.function, "Function expression")->required();
  apply_cmd->add_option("matrix", apply.matrix_path, "Matrix file ('-' for stdin)")->required();
  apply_cmd->add_option("-o,--output", apply.output, "Output file (default stdout)");

  ClarkOptions clark;
  auto* clark_cmd = app.add_subcommand("clark", "Clark decomposition of a Blaschke product with B(0) = 0");
  clark_cmd->add_option("function", clark.function, "Expression 'blaschke c a1 a2 ...'");
  clark_cmd->add_option("--gamma", clark.gamma, "Unimodular level gamma");
  clark_cmd->add_option("--check-points", clark.check_points, "Disk points for the identity residual")
      ->check(CLI::Range(1, 1 << 20));
  clark_cmd->add_option("--random-degree", clark.random_degree, "Use a seeded random product of this degree")
      ->check(CLI::Range(1, 64));
  clark_cmd->add_option("--seed", clark.seed, "Seed for --random-degree");

  TeardropOptions teardrop;
  auto* teardrop_cmd = app.add_subcommand("teardrop", "Boundary of teardrop(alpha) (CSV or SVG)");
  teardrop_cmd->add_option("--alpha", teardrop.alpha, "Complex alpha with |alpha| <= 1")->required();
  teardrop_cmd->add_option("--out", teardrop.format, "Output format")->check(CLI::IsMember({"csv", "svg"}));
  teardrop_cmd->add_option("--points", teardrop.points, "Number of directions");
  teardrop_cmd->add_option("-o,--output", teardrop.output, "Output file (default stdout)");

  VerifyOptions verify;
  std::vector<std::string> suite_choices{"all"};
  for (const auto name : kSuiteNames) suite_choices.emplace_back(name);
  auto* verify_cmd = app.add_subcommand("verify", "Run seeded randomized inequality checks");
  verify_cmd->add_option("--suite", verify.suite, "Suite name or 'all'")->check(CLI::IsMember(suite_choices));
  verify_cmd->add_option("--trials", verify.trials, "Trials per suite");
  verify_cmd->add_option("--seed", verify.seed, "Seed (default $NUMRANGE_SEED or 42)");
  verify_cmd->add_flag("--json", verify.json, "Machine-readable JSON report");
  verify_cmd->add_option("-o,--output", verify.output, "Report file (default stdout)");

  SearchOptions search;
  auto* search_cmd = app.add_subcommand("search", "Hill-climb for matrices maximizing w(f(T)) with w(T) = 1");
  search_cmd->add_option("function", search.function, "Function expression")->required();
  search_cmd->add_option("--dim", search.dim, "Matrix dimension");
  search_cmd->add_option("--iters", search.iters, "Objective evaluations");
  search_cmd->add_option("--seed", search.seed, "Seed (default $NUMRANGE_SEED or 42)");
  search_cmd->add_option("--witness", search.witness_path, "Write the best matrix here");
  search_cmd->add_flag("--no-builtin", search.no_builtin, "Skip the built-in nilpotent start");

  std::vector<const char*> argv{"fovkit"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (range_cmd->parsed()) return cmd_range(range, out);
    if (radius_cmd->parsed()) return cmd_radius(radius, out);
    if (apply_cmd->parsed()) return cmd_apply(apply, out);
    if (clark_cmd->parsed()) return cmd_clark(clark, out);
    if (teardrop_cmd->parsed()) return cmd_teardrop(teardrop, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
    if (search_cmd->parsed()) return cmd_search(search, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUsage;
}

}  // namespace fov::cli
