#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hailchi/clustering.h"
#include "hailchi/fitting.h"
#include "hailchi/special_functions.h"
#include "hailchi/storm_model.h"

namespace {

using namespace hailchi;

RadialSeries simulated_series(std::size_t n) {
  const auto events = sample_events(n, {1.0, 1.0}, 7);
  return radial_series(events, fit_binormal(events));
}

void BM_FitChi(benchmark::State& state) {
  const RadialSeries series = simulated_series(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_chi(series));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitChi)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_FitLogNormal(benchmark::State& state) {
  const RadialSeries series = simulated_series(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fit_lognormal(series));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitLogNormal)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

void BM_SingleLinkage(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<FeatureVector> points(state.range(0));
  for (auto& p : points) p = {u(rng), u(rng), u(rng)};
  for (auto _ : state) benchmark::DoNotOptimize(single_linkage(points));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SingleLinkage)->RangeMultiplier(2)->Range(64, 2048)->Complexity(benchmark::oNSquared);

void BM_TotalDamageQuadrature(benchmark::State& state) {
  const Velocity2 v{2.0, -1.0};
  for (auto _ : state) benchmark::DoNotOptimize(total_damage_quadrature({0.3, -0.7}, v));
}
BENCHMARK(BM_TotalDamageQuadrature);

void BM_TotalDamageClosed(benchmark::State& state) {
  const Velocity2 v{2.0, -1.0};
  for (auto _ : state) benchmark::DoNotOptimize(total_damage_closed({0.3, -0.7}, v));
}
BENCHMARK(BM_TotalDamageClosed);

void BM_SampleEvents(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_events(state.range(0), {1.0, 1.0}, 11));
}
BENCHMARK(BM_SampleEvents)->Arg(100000);

void BM_RegGammaP(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg_gamma_P(2.5, x));
    x = x > 40.0 ? 0.0 : x + 0.37;
  }
}
BENCHMARK(BM_RegGammaP);

}  // namespace

BENCHMARK_MAIN();
