#include <benchmark/benchmark.h>

#include "common.hpp"
#include "wcfair/lp.hpp"

using namespace wcfair;

static void BM_AssignmentLP(benchmark::State& state, Objective objective) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const Instance inst = bench::uniform_instance(n, 1);
  const Matrix centers = bench::random_centers(k, 2);
  Params params = Params::with_delta(inst, 0.01);
  params.k = k;
  const LPModel model = build_assignment_lp(objective, inst, centers, params);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_lp(model, params.lp_tolerance));
  }
}

BENCHMARK_CAPTURE(BM_AssignmentLP, rawlsian, Objective::kRawlsian)
    ->ArgsProduct({{250, 500, 1000, 2000}, {4, 8}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_AssignmentLP, utilitarian, Objective::kUtilitarian)
    ->ArgsProduct({{250, 500, 1000, 2000}, {4, 8}})
    ->Unit(benchmark::kMillisecond);
