#include <benchmark/benchmark.h>

#include "downup/decorated_chain.h"
#include "downup/distributions.h"
#include "downup/growth.h"
#include "downup/ntree_chain.h"
#include "downup/projection.h"
#include "downup/verify.h"

namespace {

using namespace downup;

void BM_EnumerateTrees(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto count = 0;
    for_each_tree(n, [&](const Tree&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumerateTrees)->DenseRange(6, 8);

void BM_UniformStep(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  auto rng = RngStream{1, 0};
  auto t = sample_tree(n, {}, rng);
  for (auto _ : state) {
    t = uniform_step(t, rng);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_UniformStep)->Arg(6)->Arg(16)->Arg(64);

void BM_AlphaStep(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  auto alpha = ratio(1, 3);
  auto rng = RngStream{2, 0};
  auto t = sample_tree(n, {alpha, false}, rng);
  for (auto _ : state) {
    t = alpha_step(t, alpha, rng);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_AlphaStep)->Arg(6)->Arg(16)->Arg(64);

void BM_DecoratedStep(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  auto rng = RngStream{3, 0};
  auto d = decorated_marginal_sample(n, 2, ratio(1, 2), rng);
  auto cfg = DecoratedChainConfig{};
  for (auto _ : state) {
    d = decorated_step(d, cfg, rng);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_DecoratedStep)->Arg(8)->Arg(64);

void BM_DmPmf(benchmark::State& state) {
  auto m = static_cast<int>(state.range(0));
  auto weights = dm_alpha_weights(3, ratio(1, 3));
  for (auto _ : state) { benchmark::DoNotOptimize(dm_pmf(m, weights)); }
}
BENCHMARK(BM_DmPmf)->Arg(4)->Arg(12);

void BM_TreeChainKernel(benchmark::State& state) {
  auto n = static_cast<int>(state.range(0));
  for (auto _ : state) { benchmark::DoNotOptimize(build_tree_chain_model(n, {})); }
}
BENCHMARK(BM_TreeChainKernel)->DenseRange(5, 6)->Unit(benchmark::kMillisecond);

void BM_DecoratedKernel(benchmark::State& state) {
  for (auto _ : state) { benchmark::DoNotOptimize(build_decorated_chain_model(6, 3, {})); }
}
BENCHMARK(BM_DecoratedKernel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
