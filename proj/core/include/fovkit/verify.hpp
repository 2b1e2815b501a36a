#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fovkit/calculus.hpp"
#include "fovkit/linalg.hpp"

namespace fov {

/// Seeded generator for the random matrix model: entries with real and
/// imaginary parts uniform in [-1, 1].
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t uniform_index(std::size_t lo, std::size_t hi);  // inclusive
  Complex unit_complex();
  Complex disk_point(double radius);  // uniform in the disk |z| <= radius
  CVector unit_vector(std::size_t dim);
  CMatrix matrix(std::size_t dim);

 private:
  std::mt19937_64 engine_;
};

/// Deterministic per-trial seed derived from a suite seed (splitmix64 mixing).
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// M / w(M), so the result has numerical radius 1.
CMatrix normalize_radius(const CMatrix& m);

/// Random normalized matrix of dimension in [min_dim, max_dim].
CMatrix random_normalized(Rng& rng, std::size_t min_dim = 2, std::size_t max_dim = 8);

/// Random Blaschke product of degree in [1, max_degree] whose first zero is
/// the origin; other zeros uniform in |z| <= 0.95.
BlaschkeProduct random_blaschke(Rng& rng, std::size_t max_degree);

/// Everything needed to re-evaluate one trial.
struct Witness {
  CMatrix matrix;
  std::optional<DiskFunction> function;
  CVector vector;
  std::vector<double> params;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double tolerance = 0.0;
  // Largest (lhs - rhs) over every checked inequality; <= tolerance on pass.
  double worst_residual = 0.0;
  // Set when a passing suite has worst_residual > tolerance / 2.
  bool warning = false;
  // The trial that produced worst_residual.
  std::optional<Witness> witness;
  std::vector<std::pair<std::string, double>> stats;

  bool passed() const noexcept { return failures == 0; }
};

// Suite names accepted by run_suite, in the order "all" runs them.
inline constexpr std::string_view kSuiteNames[] = {
    "berger-stampfli", "power", "local-ineq", "operator-ineq", "region-s", "drury", "props52",
};

VerifyReport check_berger_stampfli(std::size_t trials, std::uint64_t seed);
VerifyReport check_power_inequality(std::size_t trials, unsigned n_max, std::uint64_t seed);
VerifyReport check_local_inequality(std::size_t trials, std::uint64_t seed);
VerifyReport check_props52(std::size_t trials, std::uint64_t seed);
VerifyReport check_operator_inequality(std::size_t trials, std::uint64_t seed);
VerifyReport check_region_S(std::size_t grid_density, std::size_t trials, std::uint64_t seed);
VerifyReport check_drury(std::size_t trials, std::uint64_t seed);

/// Runs one named suite, or all of them for "all". Throws InvalidArgument on
/// an unknown name.
std::vector<VerifyReport> run_suite(std::string_view name, std::size_t trials, std::uint64_t seed);

/// Recomputes the residual that `suite` assigns to a single trial.
double witness_residual(std::string_view suite, const Witness& witness);

/// Terms of the local norm / numerical-radius inequality for T and unit x.
struct LocalInequalityTerms {
  double norm_tx_squared;
  double bound;  // 2 + 2 sqrt(1 - |<Tx, x>|^2)
};
LocalInequalityTerms local_inequality_terms(const CMatrix& t, std::span<const Complex> x);

struct ExtremalResult {
  double best_w = 0.0;
  CMatrix witness;
  std::size_t evaluations = 0;
  std::size_t skipped = 0;
};

/**
 * Hill climbing over matrices normalized to w(T) = 1, maximizing w(f(T)).
 *
 * Each restart begins from the next entry of `starts`, then from random
 * matrices. Steps perturb one real parameter by +-step (initially 0.3);
 * the step halves after 20 consecutive non-improvements and the climb
 * restarts once it drops below 1e-4. `iterations` bounds the number of
 * objective evaluations.
 */
ExtremalResult extremal_search(const DiskFunction& f, std::size_t dim, std::size_t iterations,
                               std::uint64_t seed, std::span<const CMatrix> starts = {});

std::string format_report(const VerifyReport& report);
std::string format_reports(std::span<const VerifyReport> reports);
std::string reports_to_json(std::span<const VerifyReport> reports);
std::vector<VerifyReport> parse_reports(std::string_view text);

}  // namespace fov
