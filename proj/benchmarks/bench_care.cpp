#include <benchmark/benchmark.h>

#include <random>

#include "lqrdecay/catalog.hpp"
#include "lqrdecay/riccati.hpp"
#include "lqrdecay/string_model.hpp"

using namespace lqrdecay;

static void BM_CareFourMode(benchmark::State& state) {
  const SystemSpec sys = catalog::four_mode_system(15.0, 45.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_care(sys));
  }
}
BENCHMARK(BM_CareFourMode);

static void BM_CareString(benchmark::State& state) {
  StringConfig cfg;
  cfg.N = static_cast<std::size_t>(state.range(0));
  cfg.m = 2;
  cfg.tau_over_h = 10.0;
  cfg.mass = 50.0;
  cfg.J = {2, cfg.N / 2};
  const StringSystem ss = build_string(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_care(ss.sys));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CareString)->Arg(5)->Arg(10)->Arg(20)->Arg(30)->Complexity()
    ->Unit(benchmark::kMillisecond);

static void BM_ShiftedLqr(benchmark::State& state) {
  const SystemSpec sys = catalog::uniform_ladder_system();
  for (auto _ : state) {
    benchmark::DoNotOptimize(shifted_lqr(sys, 1.0));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ShiftedLqr)->Unit(benchmark::kMillisecond);
