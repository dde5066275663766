#include <benchmark/benchmark.h>

#include "sphcover/constructions.hpp"
#include "sphcover/exact_engine.hpp"
#include "sphcover/sampling.hpp"

using namespace sphcover;

// One LP feasibility query on a full-length sign vector of a Gale cover.
static void BM_Feasible(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto poles = gale_cover(d, 2).poles();
  std::vector<int> signs(poles.size());
  for (std::size_t i = 0; i < signs.size(); ++i) signs[i] = i % 3 == 0 ? 1 : -1;
  for (auto _ : state) benchmark::DoNotOptimize(feasible(poles, signs, Region::Sphere));
}
BENCHMARK(BM_Feasible)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMicrosecond);

static void BM_MultiplicityExtrema(benchmark::State& state) {
  const Cover g = gale_cover(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(multiplicity_extrema(g, Region::Sphere));
}
BENCHMARK(BM_MultiplicityExtrema)->Args({2, 2})->Args({4, 2})->Args({6, 3})->Unit(benchmark::kMillisecond);

// Membership of one sampled point in every belt set.
static void BM_BeltEvaluate(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const Cover c = belt_cover(d, belt_auto_params(d, 4000).params);
  SamplePlan plan;
  plan.total = 4096;
  const auto pts = sample_sphere(d, plan, plan.total);
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(c.evaluate(ApproxPoint(pts[k])));
    k = (k + 1) % pts.size();
  }
}
BENCHMARK(BM_BeltEvaluate)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
