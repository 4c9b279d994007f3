#include <benchmark/benchmark.h>

#include "lacewalk/saw.hpp"

using namespace lacewalk;

static void BM_PathSampling(benchmark::State& state) {
  saw::PathSampler sampler(5, static_cast<int>(state.range(0)), 1, 0);
  lace::Path p;
  std::int64_t i = 0;
  for (auto _ : state) {
    sampler.generate(i++, p);
    benchmark::DoNotOptimize(p.coords.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 5);
}
BENCHMARK(BM_PathSampling)->Arg(5)->Arg(20);

static void BM_LaceResummedWeight(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  saw::PathSampler sampler(5, n, 1, 0);
  lace::Path p;
  std::int64_t i = 0;
  for (auto _ : state) {
    sampler.generate(i++, p);
    benchmark::DoNotOptimize(lace::j_weight_lace(p, n, 0.1, 1.0));
  }
}
BENCHMARK(BM_LaceResummedWeight)->Arg(3)->Arg(5)->Arg(6);

static void BM_EstimateCn(benchmark::State& state) {
  saw::SawParams prm;
  prm.n = 5;
  prm.n_samples = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(saw::estimate_cn(prm));
  state.SetItemsProcessed(state.iterations() * prm.n_samples);
}
BENCHMARK(BM_EstimateCn)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
