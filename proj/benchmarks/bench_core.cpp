#include <benchmark/benchmark.h>

#include "fovkit/blaschke.hpp"
#include "fovkit/calculus.hpp"
#include "fovkit/linalg.hpp"
#include "fovkit/numrange.hpp"
#include "fovkit/verify.hpp"

namespace {

fov::CMatrix hermitian_input(std::size_t n) {
  fov::Rng rng(n);
  const fov::CMatrix m = rng.matrix(n);
  return 0.5 * (m + m.adjoint());
}

void BM_HermitianEig(benchmark::State& state) {
  const auto h = hermitian_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fov::hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->DenseRange(2, 8, 2);

void BM_HermitianEigenvalues(benchmark::State& state) {
  const auto h = hermitian_input(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fov::hermitian_eigenvalues(h));
}
BENCHMARK(BM_HermitianEigenvalues)->DenseRange(2, 8, 2);

void BM_NumericalRadius(benchmark::State& state) {
  fov::Rng rng(7);
  const auto t = rng.matrix(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(fov::numerical_radius(t));
}
BENCHMARK(BM_NumericalRadius)->Arg(2)->Arg(4)->Arg(8);

void BM_LevelSet(benchmark::State& state) {
  fov::Rng rng(11);
  const auto b = fov::random_blaschke(rng, 6);
  for (auto _ : state) benchmark::DoNotOptimize(fov::level_set(b, fov::Complex(0.0, 1.0)));
}
BENCHMARK(BM_LevelSet);

void BM_EvalMatrixBlaschke(benchmark::State& state) {
  fov::Rng rng(13);
  const auto f = fov::DiskFunction::blaschke(fov::random_blaschke(rng, 5));
  const auto t = fov::random_normalized(rng, 6, 6);
  for (auto _ : state) benchmark::DoNotOptimize(fov::eval_matrix(f, t));
}
BENCHMARK(BM_EvalMatrixBlaschke);

void BM_VerifyLocalInequality(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fov::check_local_inequality(100, 42));
}
BENCHMARK(BM_VerifyLocalInequality)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
