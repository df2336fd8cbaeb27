#include <benchmark/benchmark.h>

#include "cea/dispatcher.hpp"
#include "cea/game.hpp"
#include "cea/planner.hpp"

using namespace cea;

static void BM_EnumerateValidBoards(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_valid_full_boards());
}
BENCHMARK(BM_EnumerateValidBoards);

static void BM_PlanArchetype(benchmark::State& state) {
  PersonalityVector p = archetypes()[static_cast<size_t>(state.range(0))];
  const ActionCatalog& catalog = ActionCatalog::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(plan(initial_state(p), catalog, p, true));
  state.SetLabel(p.to_string());
}
BENCHMARK(BM_PlanArchetype)->DenseRange(0, 11);

static void BM_PlanStrongLowConscientiousness(benchmark::State& state) {
  PersonalityVector p = PersonalityVector::make(-1, 0, 0);
  const ActionCatalog& catalog = ActionCatalog::defaults();
  for (auto _ : state) benchmark::DoNotOptimize(plan(initial_state(p), catalog, p, false));
}
BENCHMARK(BM_PlanStrongLowConscientiousness);

static void BM_BatchSession(benchmark::State& state) {
  SessionConfig c;
  c.personality = PersonalityVector::make(1, 0, -1);
  uint64_t seed = 0;
  for (auto _ : state) {
    c.seed = ++seed;
    Session s = Session::create(c);
    benchmark::DoNotOptimize(s.run_to_completion().summary.steps);
  }
}
BENCHMARK(BM_BatchSession)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
