#include <benchmark/benchmark.h>

#include "lacewalk/majorant.hpp"

using namespace lacewalk;

static void BM_MixtureConvolve(benchmark::State& state) {
  const MajorantFamily sw = MajorantFamily::saw(1.0, 5);
  const int n = static_cast<int>(state.range(0));
  const GaussianMixture a = sw.gamma(n), b = sw.gamma(n);
  for (auto _ : state) benchmark::DoNotOptimize(a.convolve(b));
  state.SetItemsProcessed(state.iterations() * n * n);
}
BENCHMARK(BM_MixtureConvolve)->Arg(8)->Arg(32)->Arg(128);

static void BM_EnvelopeProfile(benchmark::State& state) {
  const MajorantFamily pl = MajorantFamily::power_law(2.5, 5);
  const int n = static_cast<int>(state.range(0));
  const ZetaTable z = make_zeta_table(pl, n);
  for (auto _ : state) benchmark::DoNotOptimize(f_profile(pl, z, 0.98, 0.01, n));
}
BENCHMARK(BM_EnvelopeProfile)->Arg(16)->Arg(64);

static void BM_MixtureValue(benchmark::State& state) {
  const MajorantFamily sw = MajorantFamily::saw(1.0, 5);
  const GaussianMixture g = sw.gamma(static_cast<int>(state.range(0)));
  double r = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(g.value(r));
    r += 1e-3;
  }
}
BENCHMARK(BM_MixtureValue)->Arg(16)->Arg(128);
