#include <benchmark/benchmark.h>

#include "widomlab/fourier.hpp"

namespace {

using namespace widomlab;

void BM_GammaClosedDisk(benchmark::State& state) {
  auto disk = geometry::Domain::ball(2, 1.0);
  auto one = fourier::Symbol::one();
  Vec x(2);
  double v = 0.0;
  for (auto _ : state) {
    v += 0.1;
    auto g = fourier::gamma(disk, one, x, Vec{v, 0.3 * v});
    benchmark::DoNotOptimize(g.value);
  }
}

void BM_GammaQuadratureDisk(benchmark::State& state) {
  auto disk = geometry::Domain::ball(2, 1.0);
  auto one = fourier::Symbol::one();
  Vec x(2);
  const double v = static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto g = fourier::gamma(disk, one, x, Vec{v, 0.0}, fourier::GammaMethod::quadrature);
    benchmark::DoNotOptimize(g.value);
  }
}

void BM_GammaAsymptoticBall3(benchmark::State& state) {
  auto ball = geometry::Domain::ball(3, 1.0);
  auto one = fourier::Symbol::one();
  Vec x(3);
  double v = 50.0;
  for (auto _ : state) {
    v += 0.37;
    auto g = fourier::gamma_asymptotic(ball, one, x, Vec{0.3 * v, 0.5 * v, 0.81 * v});
    benchmark::DoNotOptimize(g.value);
  }
}

}  // namespace

BENCHMARK(BM_GammaClosedDisk);
BENCHMARK(BM_GammaQuadratureDisk)->Arg(5)->Arg(20)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GammaAsymptoticBall3);
