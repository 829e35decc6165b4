#include <benchmark/benchmark.h>

#include "contactgeom/calculus.hpp"
#include "contactgeom/catalog.hpp"

using namespace contactgeom;

static void BM_ContactAngleField(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SurfaceGrid g = clifford().sample(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(contact_angle_field(g));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_ContactAngleField)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_AnalyzeSphere(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SurfaceGrid g = geodesic_sphere().sample(n, n);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_surface(g));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_AnalyzeSphere)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_VerifyLaplacian(benchmark::State& state) {
  const CatalogEntry e = geodesic_sphere();
  const std::vector<SurfaceGrid> levels = {e.sample(32, 32), e.sample(64, 64), e.sample(128, 128)};
  for (auto _ : state) benchmark::DoNotOptimize(verify_identity(Identity::laplacian, levels, 0.05));
}
BENCHMARK(BM_VerifyLaplacian)->Unit(benchmark::kMillisecond);
