#include <benchmark/benchmark.h>

#include "contactgeom/catalog.hpp"
#include "contactgeom/flow.hpp"

using namespace contactgeom;

static void BM_WillmoreEnergy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SurfaceGrid g = make_entry("clifford", {{"eps", 0.05}}).sample(n, n);
  g.drop_partials();
  for (auto _ : state) benchmark::DoNotOptimize(willmore_energy(g));
}
BENCHMARK(BM_WillmoreEnergy)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_FlowIteration(benchmark::State& state) {
  FlowConfig c;
  c.params = {{"eps", 0.05}};
  c.max_iterations = 1;
  for (auto _ : state) benchmark::DoNotOptimize(descend(c));
}
BENCHMARK(BM_FlowIteration)->Unit(benchmark::kMillisecond);

static void BM_ROnlyDescent(benchmark::State& state) {
  FlowConfig c;
  c.surface = "rtorus";
  c.params = {{"r", 0.885}};
  c.mode = FlowMode::r_only;
  for (auto _ : state) benchmark::DoNotOptimize(descend(c));
}
BENCHMARK(BM_ROnlyDescent)->Unit(benchmark::kMillisecond);
