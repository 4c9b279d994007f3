#include <benchmark/benchmark.h>

#include "lacewalk/solver.hpp"

using namespace lacewalk;

static void BM_RunRecursion(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const BFamilySpec fam = power_law_family(2.5, 5, n_max);
  SolverConfig cfg;
  cfg.dim = 5;
  cfg.lambda = 0.02;
  cfg.n_max = n_max;
  cfg.grid = RadialGrid::uniform(12.0, 2048);
  for (auto _ : state) benchmark::DoNotOptimize(run_recursion(cfg, fam));
  state.SetItemsProcessed(state.iterations() * n_max * n_max * 2048 / 2);
}
BENCHMARK(BM_RunRecursion)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_InverseTransform(benchmark::State& state) {
  const auto grid = RadialGrid::uniform(12.0, static_cast<int>(state.range(0)));
  const RadialFn f = mixture_hat(GaussianMixture::gaussian(5, 4.0), grid);
  double r = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_radial(f, r, 5));
    r = r < 8.0 ? r + 0.05 : 0.1;
  }
}
BENCHMARK(BM_InverseTransform)->Arg(1024)->Arg(2048);
