#include <benchmark/benchmark.h>

#include "widomlab/entropy.hpp"
#include "widomlab/numerics.hpp"

namespace {

void BM_JacobiSineKernel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto m = widomlab::entropy::lattice_overlap_matrix(n, 0.5 * widomlab::kPi);
  for (auto _ : state) {
    auto ev = widomlab::numerics::eigenvalues_hermitian(m);
    benchmark::DoNotOptimize(ev);
  }
  state.SetComplexityN(n);
}

void BM_JacobiComplexEmbedding(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  widomlab::numerics::RandomSource rng(7);
  widomlab::numerics::HermitianMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      m.set(i, j, i == j ? widomlab::Complex(rng.normal(), 0.0)
                         : widomlab::Complex(rng.normal(), rng.normal()));
  for (auto _ : state) {
    auto ev = widomlab::numerics::eigenvalues_hermitian(m);
    benchmark::DoNotOptimize(ev);
  }
}

}  // namespace

BENCHMARK(BM_JacobiSineKernel)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond)->Complexity();
BENCHMARK(BM_JacobiComplexEmbedding)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
