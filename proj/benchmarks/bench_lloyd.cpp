#include <benchmark/benchmark.h>

#include <vector>

#include "common.hpp"
#include "wcfair/centers.hpp"

using namespace wcfair;

static void BM_Lloyd(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const Instance inst = bench::uniform_instance(n, 5);
  const std::vector<double> weights(n, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lloyd(inst, k, weights, 7));
  }
}
BENCHMARK(BM_Lloyd)->ArgsProduct({{2000, 10000}, {4, 12}})->Unit(benchmark::kMillisecond);

static void BM_SociallyFair(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Instance inst = bench::uniform_instance(n, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(socially_fair_centers(inst, 4, 7));
  }
}
BENCHMARK(BM_SociallyFair)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);
