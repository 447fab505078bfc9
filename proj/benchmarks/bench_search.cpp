#include <benchmark/benchmark.h>

#include "lqrdecay/bounds.hpp"
#include "lqrdecay/catalog.hpp"
#include "lqrdecay/search.hpp"

using namespace lqrdecay;

// throughput of the per-configuration bound pass (step 2 of the search)
static void BM_ClosedFormBounds(benchmark::State& state) {
  StringConfig cfg = catalog::string_benchmark(2);
  cfg.J = {7, 23};
  for (auto _ : state) {
    benchmark::DoNotOptimize(summarize(closed_form_bounds(cfg)));
  }
}
BENCHMARK(BM_ClosedFormBounds);

static void BM_PrunedSearchSmall(benchmark::State& state) {
  StringConfig base;
  base.N = static_cast<std::size_t>(state.range(0));
  base.m = 2;
  base.tau_over_h = 10.0;
  base.mass = 50.0;
  SearchOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pruned_search(base, 2, opts));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PrunedSearchSmall)->Arg(6)->Arg(8)->Arg(10)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
