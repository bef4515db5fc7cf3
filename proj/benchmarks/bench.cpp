#include <benchmark/benchmark.h>

#include "splab/bounds.hpp"
#include "splab/experiments.hpp"

namespace {

splab::ComplexMatrix random_matrix(Eigen::Index n) {
  return splab::gen_gaussian_perturbation(n, 1.0, 42) + splab::ComplexMatrix::Identity(n, n) * splab::cd(0, 0.3);
}

void BM_Eig(benchmark::State& state) {
  const auto A = random_matrix(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(splab::eig(A));
}
BENCHMARK(BM_Eig)->Arg(3)->Arg(10)->Arg(50)->Arg(200);

void BM_Delta0(benchmark::State& state) {
  const auto l = splab::eigenvalues(random_matrix(state.range(0)));
  const Eigen::Index r = state.range(0) / 2;
  const splab::ComplexVector a = l.head(r), b = l.tail(l.size() - r);
  for (auto _ : state) benchmark::DoNotOptimize(splab::gap_delta0(a, b));
}
BENCHMARK(BM_Delta0)->Arg(4)->Arg(10)->Arg(40);

void BM_FullReport(benchmark::State& state) {
  const auto A = random_matrix(state.range(0));
  const auto dA = splab::gen_gaussian_perturbation(state.range(0), 1e-8, 7);
  for (auto _ : state) benchmark::DoNotOptimize(splab::full_report(A, dA, splab::TopKMagnitude{2}));
}
BENCHMARK(BM_FullReport)->Arg(3)->Arg(10)->Arg(30);

void BM_SepFrobenius(benchmark::State& state) {
  const Eigen::Index n = state.range(0), r = n / 2;
  const auto A = random_matrix(n);
  const splab::ComplexMatrix L1 = A.topLeftCorner(r, r), L2 = A.bottomRightCorner(n - r, n - r);
  for (auto _ : state) benchmark::DoNotOptimize(splab::sep_frobenius(L1, L2));
}
BENCHMARK(BM_SepFrobenius)->Arg(4)->Arg(10)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
