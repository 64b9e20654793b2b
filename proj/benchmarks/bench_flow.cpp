#include <benchmark/benchmark.h>

#include "common.hpp"
#include "wcfair/lp.hpp"
#include "wcfair/rounding.hpp"

using namespace wcfair;

namespace {

// LP optimum of a uniform instance, reused across iterations.
struct Fixture {
  Instance inst;
  Matrix centers;
  FractionalSolution frac;
};

Fixture solved(std::size_t n, std::size_t k, Objective objective) {
  Fixture f{bench::uniform_instance(n, 3), bench::random_centers(k, 4), {}};
  Params params = Params::with_delta(f.inst, 0.01);
  params.k = k;
  f.frac = solve_lp(build_assignment_lp(objective, f.inst, f.centers, params),
                    params.lp_tolerance);
  return f;
}

}  // namespace

static void BM_RawlsianRound(benchmark::State& state) {
  const Fixture f = solved(static_cast<std::size_t>(state.range(0)), 4,
                           Objective::kRawlsian);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rawlsian_round(f.frac, f.inst, f.centers, 2));
  }
}
BENCHMARK(BM_RawlsianRound)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_UtilitarianRound(benchmark::State& state) {
  const Fixture f = solved(static_cast<std::size_t>(state.range(0)), 4,
                           Objective::kUtilitarian);
  for (auto _ : state) {
    benchmark::DoNotOptimize(utilitarian_round(f.frac, f.inst, f.centers, 2));
  }
}
BENCHMARK(BM_UtilitarianRound)->Arg(500)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
