#include <benchmark/benchmark.h>

#include <vector>

#include "spherebound/density.hpp"
#include "spherebound/geometry.hpp"
#include "spherebound/join_sampler.hpp"
#include "spherebound/quadrature.hpp"
#include "spherebound/random.hpp"

using namespace spherebound;

static void BM_OrderStatisticQuantile(benchmark::State& state) {
  const OrderStatisticLaw law(3, static_cast<int>(state.range(0)) - 1);
  RandomStream stream(1, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(law.quantile(stream.uniform()));
}
BENCHMARK(BM_OrderStatisticQuantile)->Arg(8)->Arg(42);

static void BM_JoinDraw(benchmark::State& state) {
  const JoinSampler sampler(canonical_wedge(static_cast<int>(state.range(0))));
  RandomStream stream(1, 0, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sampler.draw(stream, 0.0, 1.0));
}
BENCHMARK(BM_JoinDraw)->Arg(8)->Arg(42);

static void BM_SurfaceDensity(benchmark::State& state) {
  const WedgeConfig config = canonical_wedge(8);
  EstimatorOptions opts;
  opts.workers = 1;
  opts.planar = state.range(0) == 0 ? PlanarMode::conditional : PlanarMode::sampled;
  for (auto _ : state) benchmark::DoNotOptimize(surface_density(config, 100000, 7, opts));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SurfaceDensity)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_BoundSet(benchmark::State& state) {
  EstimatorOptions opts;
  opts.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(bound_set(static_cast<int>(state.range(0)), 100000, 7, opts));
}
BENCHMARK(BM_BoundSet)->Arg(8)->Arg(42)->Unit(benchmark::kMillisecond);

static void BM_Quadrature(benchmark::State& state) {
  const WedgeConfig config = canonical_wedge(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(quadrature_density(config));
}
BENCHMARK(BM_Quadrature)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
