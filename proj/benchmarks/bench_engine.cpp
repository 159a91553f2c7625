#include <benchmark/benchmark.h>

#include "psmanip/engine.hpp"
#include "psmanip/manipulation.hpp"
#include "psmanip/theory.hpp"

namespace {

using namespace psmanip;

void BM_RunPS(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OrdinalProfile profile = random_profile(n, n, Seed(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_ps(profile));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RunPS)->Arg(8)->Arg(12)->Arg(16)->Arg(32)->Arg(64);

void BM_RunWithElimination(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const OrdinalProfile profile = random_profile(n, n, Seed(2));
  const PausePlan plan = PausePlan::eliminate(n, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_with_pauses(profile, plan));
  }
}
BENCHMARK(BM_RunWithElimination)->Arg(8)->Arg(16)->Arg(32);

void BM_BestResponseInterestedFirst(benchmark::State& state) {
  const int n = 12;
  const int k = static_cast<int>(state.range(0));
  const OrdinalProfile profile = random_profile(n, n, Seed(3));
  const DichotomousValuation valuation = dichotomous_for(profile, 0, k);
  const SearchSpace space = SearchSpace::interested_first(valuation.interested);
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(profile, 0, AgentValuation(valuation), space));
  }
}
BENCHMARK(BM_BestResponseInterestedFirst)->Arg(2)->Arg(4)->Arg(6);

void BM_PauseMonotonicityCheck(benchmark::State& state) {
  const int n = 10;
  const OrdinalProfile profile = random_profile(n, n, Seed(4));
  PausePlan plan(n);
  plan.add_pause(1, Rational(1, 4), Rational(1, 2));
  plan.add_pause(3, Rational(0), std::nullopt);
  plan.add_pause(7, Rational(1, 3), Rational(5, 6));
  for (auto _ : state) {
    benchmark::DoNotOptimize(pause_monotonicity_check(profile, plan));
  }
}
BENCHMARK(BM_PauseMonotonicityCheck);

}  // namespace

BENCHMARK_MAIN();
