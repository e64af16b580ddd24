#include <benchmark/benchmark.h>

#include <Eigen/SVD>

#include "ladmap/prox.hpp"
#include "ladmap/random.hpp"

namespace {

using namespace ladmap;

// n x n operator of rank r given as a product of thin factors.
Matrix low_rank(Index n, Index r, std::uint64_t seed) {
  Rng rng(seed);
  return gaussian_matrix(n, r, rng) * gaussian_matrix(r, n, rng);
}

void BM_LanczosTopK(benchmark::State& state) {
  const Index n = state.range(0), k = state.range(1);
  const Matrix A = low_rank(n, 2 * k, 3) + 1e-3 * low_rank(n, n, 4);
  const ImplicitOperator op = ImplicitOperator::wrap(A);
  int steps = 0;
  for (auto _ : state) {
    PartialSvd s = lanczos_partial_svd(op, k);
    steps = s.steps;
    benchmark::DoNotOptimize(s.sigma.data());
  }
  state.counters["steps"] = steps;
}
BENCHMARK(BM_LanczosTopK)->Args({200, 10})->Args({400, 10})->Args({800, 10})->Args({400, 40})
    ->Unit(benchmark::kMillisecond);

void BM_DenseSvdReference(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix A = low_rank(n, 20, 3);
  for (auto _ : state) {
    Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    benchmark::DoNotOptimize(svd.singularValues().data());
  }
}
BENCHMARK(BM_DenseSvdReference)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_L21Shrink(benchmark::State& state) {
  Rng rng(5);
  const Matrix M = gaussian_matrix(state.range(0), state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(l21_shrink(M, ShrinkThreshold(10.0)).data());
}
BENCHMARK(BM_L21Shrink)->Arg(200)->Arg(800);

}  // namespace
