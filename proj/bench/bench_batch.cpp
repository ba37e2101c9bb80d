#include <benchmark/benchmark.h>

#include <random>

#include "auvctl/batch.hpp"

using namespace auvctl;

static std::vector<Scenario> k3_sweep(int n) {
  std::vector<Scenario> out;
  for (int i = 0; i < n; ++i) {
    Scenario s = case1_scenario();
    s.duration = 30.0;
    s.gains.k3 = Vec4::Constant(1.0 + i);
    out.push_back(s);
  }
  return out;
}

static std::vector<PlantState> random_states(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::vector<PlantState> out(n);
  for (auto& x : out) {
    x.eta = Vec4(u(rng), u(rng), u(rng), u(rng));
    x.eta_dot = Vec4(u(rng), u(rng), u(rng), u(rng)) / 5.0;
  }
  return out;
}

static void BM_BatchSerial(benchmark::State& state) {
  const auto scenarios = k3_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_serial(scenarios));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_BatchParallel(benchmark::State& state) {
  const auto scenarios = k3_sweep(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_batch_parallel(scenarios));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_PropertiesSerial(benchmark::State& state) {
  const auto states = random_states(static_cast<std::size_t>(state.range(0)));
  const AuvParams p;
  for (auto _ : state) benchmark::DoNotOptimize(model_properties_serial(p, states));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_PropertiesParallel(benchmark::State& state) {
  const auto states = random_states(static_cast<std::size_t>(state.range(0)));
  const AuvParams p;
  for (auto _ : state) benchmark::DoNotOptimize(model_properties_parallel(p, states));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_BatchSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatchParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PropertiesSerial)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PropertiesParallel)->Arg(1000)->Arg(100000)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
