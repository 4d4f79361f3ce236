#include <benchmark/benchmark.h>

#include <vector>

#include "biframe/kernels.hpp"
#include "biframe/rng.hpp"

namespace {

using namespace biframe;

struct Fixture {
  std::vector<Vector> x;
  std::vector<Vector> y;
  std::vector<double> w;
  Operator t;
};

Fixture make(std::size_t n, std::size_t d) {
  CounterRng rng(42);
  Fixture f;
  f.t = Operator(d, d);
  for (auto& z : f.t.entries()) z = {rng.normal(), rng.normal()};
  for (std::size_t k = 0; k < n; ++k) {
    Vector a(d);
    Vector b(d);
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = {rng.normal(), rng.normal()};
      b[i] = {rng.normal(), rng.normal()};
    }
    f.x.push_back(a);
    f.y.push_back(b);
    f.w.push_back(rng.uniform(0.5, 1.5));
  }
  return f;
}

void BM_AssembleSerial(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(1));
  const Fixture f = make(static_cast<std::size_t>(state.range(0)), d);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::assemble_biframe(f.x, f.y, f.w, d));
}

void BM_AssembleOmp(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(1));
  const Fixture f = make(static_cast<std::size_t>(state.range(0)), d);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::assemble_biframe(f.x, f.y, f.w, d));
}

void BM_TransformSerial(benchmark::State& state) {
  const Fixture f = make(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::transform_samples(f.t, f.x));
}

void BM_TransformOmp(benchmark::State& state) {
  const Fixture f = make(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::omp::transform_samples(f.t, f.x));
}

void sizes(benchmark::internal::Benchmark* b) {
  for (int n : {256, 4096}) {
    for (int d : {4, 16, 64}) b->Args({n, d});
  }
}

}  // namespace

BENCHMARK(BM_AssembleSerial)->Apply(sizes);
BENCHMARK(BM_AssembleOmp)->Apply(sizes);
BENCHMARK(BM_TransformSerial)->Apply(sizes);
BENCHMARK(BM_TransformOmp)->Apply(sizes);

BENCHMARK_MAIN();
