#include <benchmark/benchmark.h>

#include "gtent/functionals.hpp"
#include "gtent/generators.hpp"
#include "gtent/parallel.hpp"
#include "gtent/reference.hpp"

using namespace gtent;

namespace {

// The reference kernels scan every node per vertex, so the grids stay small.
GridFunction sample(std::size_t nx, std::size_t nt) {
  auto grid = HalfSpaceGrid::make({Axis{-8.0, 8.0, nx}}, 1e-3, 8.0, nt);
  Rng rng(42);
  return random_function(grid, rng);
}

void BM_area_reference(benchmark::State& st) {
  auto f = sample(static_cast<std::size_t>(st.range(0)), 64);
  for (auto _ : st) benchmark::DoNotOptimize(reference::area_S(f, 2.0, {1.0, 1.0}));
}

void BM_area_serial(benchmark::State& st) {
  auto f = sample(static_cast<std::size_t>(st.range(0)), 64);
  for (auto _ : st) benchmark::DoNotOptimize(area_S(f, 2.0, {1.0, 1.0}, Exec::Serial));
}

void BM_area_parallel(benchmark::State& st) {
  auto f = sample(static_cast<std::size_t>(st.range(0)), 64);
  for (auto _ : st) benchmark::DoNotOptimize(area_S(f, 2.0, {1.0, 1.0}, Exec::Parallel));
}

void BM_carleson_reference(benchmark::State& st) {
  auto f = sample(static_cast<std::size_t>(st.range(0)), 64);
  auto dict = BallDictionary::graded(f.grid(), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(reference::carleson_C(f, 2.0, 1.0, 1.0, dict));
}

void BM_carleson_parallel(benchmark::State& st) {
  auto f = sample(static_cast<std::size_t>(st.range(0)), 64);
  auto dict = BallDictionary::graded(f.grid(), 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(carleson_C(f, 2.0, 1.0, 1.0, dict, Exec::Parallel));
}

}  // namespace

BENCHMARK(BM_area_reference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_area_serial)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_area_parallel)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_carleson_reference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_carleson_parallel)->Arg(64)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
