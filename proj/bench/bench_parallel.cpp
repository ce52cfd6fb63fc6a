// Parallel kernels against their serial references. Set HLSKIT_THREADS (or
// OMP_NUM_THREADS) to vary the worker count.

#include <benchmark/benchmark.h>

#include "hlskit/consistency.hpp"
#include "hlskit/riesz.hpp"
#include "hlskit/test_functions.hpp"

using namespace hlskit;

namespace {

GridFunction gaussian(std::size_t rank, std::size_t cells) {
  return sample(GaussianProduct{std::vector<double>(rank, 0.0), std::vector<double>(rank, 1.0)},
                std::vector<Axis>(rank, Axis{-4, 4, cells}));
}

void BM_RieszParallel(benchmark::State& state) {
  const auto f = gaussian(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto out = staggered(f.axes());
  for (auto _ : state) benchmark::DoNotOptimize(riesz_apply(f, 0.75, out, {Execution::Parallel}));
}

void BM_RieszSerial(benchmark::State& state) {
  const auto f = gaussian(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto out = staggered(f.axes());
  for (auto _ : state) benchmark::DoNotOptimize(riesz_apply(f, 0.75, out, {Execution::Serial}));
}

void BM_RieszReference(benchmark::State& state) {
  const auto f = gaussian(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  const auto out = staggered(f.axes());
  for (auto _ : state) benchmark::DoNotOptimize(riesz_apply_reference(f, 0.75, out));
}

void BM_DualityLattice(benchmark::State& state) {
  const auto lattice = default_lattice(static_cast<int>(state.range(0)));
  const bool parallel = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(check_duality(lattice, {parallel}));
}

}  // namespace

BENCHMARK(BM_RieszParallel)->Args({1, 512})->Args({2, 48})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RieszSerial)->Args({1, 512})->Args({2, 48})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RieszReference)->Args({1, 512})->Args({2, 48})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DualityLattice)->Args({2, 0})->Args({2, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
