#include <benchmark/benchmark.h>

#include "widomlab/trace.hpp"

namespace {

using namespace widomlab;

trace::OperatorSpec interval_spec(double r) {
  auto box = geometry::Domain::box({{-1.0, 1.0}});
  return trace::make_spec(box, box, fourier::Symbol::one(), r);
}

void BM_TraceSquareOverlap1d(benchmark::State& state) {
  auto spec = interval_spec(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto t = trace::trace_square(spec, trace::TraceMethod::overlap);
    benchmark::DoNotOptimize(t.value);
  }
}

void BM_TraceSquareRadial2d(benchmark::State& state) {
  auto disk = geometry::Domain::ball(2, 1.0);
  auto spec = trace::make_spec(disk, disk, fourier::Symbol::one(),
                               static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto t = trace::trace_square(spec, trace::TraceMethod::radial);
    benchmark::DoNotOptimize(t.value);
  }
}

void BM_NystromAssembly1d(benchmark::State& state) {
  auto spec = interval_spec(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    auto op = trace::build_nystrom(spec, 0);
    benchmark::DoNotOptimize(op.m.data());
  }
}

}  // namespace

BENCHMARK(BM_TraceSquareOverlap1d)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TraceSquareRadial2d)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NystromAssembly1d)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
