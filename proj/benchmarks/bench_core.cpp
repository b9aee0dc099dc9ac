#include <benchmark/benchmark.h>

#include <random>

#include "ceslab/dynamics.hpp"
#include "ceslab/eigen4.hpp"
#include "ceslab/normalization.hpp"
#include "ceslab/stability.hpp"
#include "ceslab/steady_state.hpp"

using namespace ceslab;

namespace {

const double kPsi[5][2] = {{0.25, -0.10}, {-0.10, -0.15}, {0.15, 0.10}, {0.10, 0.15}, {-0.15, -0.10}};

void BM_SteadyState(benchmark::State& state) {
  const ModelParams p = benchmark_params(kPsi[state.range(0)][0], kPsi[state.range(0)][1]);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state(p));
}
BENCHMARK(BM_SteadyState)->DenseRange(0, 4);

void BM_StabilityReport(benchmark::State& state) {
  const ModelParams p = benchmark_params(kPsi[state.range(0)][0], kPsi[state.range(0)][1]);
  for (auto _ : state) benchmark::DoNotOptimize(stability_report(p));
}
BENCHMARK(BM_StabilityReport)->DenseRange(0, 4);

void BM_Eigen4(benchmark::State& state) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> nd;
  std::vector<Matrix4> mats(256);
  for (auto& m : mats)
    for (auto& row : m)
      for (auto& x : row) x = nd(rng);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(eigen4(mats[i++ & 255]));
}
BENCHMARK(BM_Eigen4);

void BM_SaddlePath(benchmark::State& state) {
  const ModelParams p = benchmark_params(-0.10, -0.15);
  const double z0 = 0.9 * steady_state(p).z_star;
  for (auto _ : state) benchmark::DoNotOptimize(saddle_path(p, z0));
}
BENCHMARK(BM_SaddlePath)->Unit(benchmark::kMillisecond);

void BM_RStarOfSigma(benchmark::State& state) {
  const ModelParams p = benchmark_params(0.25, -0.10);
  const Baseline b = reference_baseline(p);
  for (auto _ : state) benchmark::DoNotOptimize(r_star_of_sigma(1.2, b, p));
}
BENCHMARK(BM_RStarOfSigma);

}  // namespace

BENCHMARK_MAIN();
