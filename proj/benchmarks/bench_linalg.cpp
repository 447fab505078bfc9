#include <benchmark/benchmark.h>

#include <random>

#include "lqrdecay/linalg.hpp"

using namespace lqrdecay;

namespace {

ComplexMatrix random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = cxd{u(rng), u(rng)};
  return m;
}

}  // namespace

static void BM_HermitianEig(benchmark::State& state) {
  std::mt19937 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  ComplexMatrix m = random_matrix(rng, n);
  m = 0.5 * (m + m.adjoint());
  for (auto _ : state) {
    benchmark::DoNotOptimize(hermitian_eig(m));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HermitianEig)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Complexity();

static void BM_GeneralEig(benchmark::State& state) {
  std::mt19937 rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix m = random_matrix(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(general_eig(m));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GeneralEig)->Arg(8)->Arg(16)->Arg(32)->Arg(64)->Complexity();

static void BM_Inverse(benchmark::State& state) {
  std::mt19937 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const ComplexMatrix m = random_matrix(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inverse_with_log_det(m));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Inverse)->Arg(16)->Arg(32)->Arg(64)->Arg(120)->Complexity();
