#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fwb/approx_sequences.hpp"
#include "fwb/besov.hpp"
#include "fwb/fw_system.hpp"

namespace {

fwb::PeriodicFunction test_function(const fwb::GridSpec& grid) {
  return fwb::from_terms({fwb::TrigTerm::sin(1.0, 3), fwb::TrigTerm::cos(0.3, 7),
                          fwb::TrigTerm::sin(0.05, grid.size() / 8)},
                         grid);
}

void BM_analyze(benchmark::State& state) {
  const fwb::GridSpec grid(static_cast<int>(state.range(0)));
  const std::vector<double> samples = fwb::synthesize(test_function(grid));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwb::analyze(samples, grid));
  }
}
BENCHMARK(BM_analyze)->Arg(1024)->Arg(4096);

void BM_multiply(benchmark::State& state) {
  const fwb::GridSpec grid(static_cast<int>(state.range(0)));
  const fwb::PeriodicFunction f = test_function(grid);
  const fwb::PeriodicFunction g = fwb::derivative(f);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwb::multiply(f, g));
  }
}
BENCHMARK(BM_multiply)->Arg(1024)->Arg(4096);

void BM_besov_norm(benchmark::State& state) {
  const fwb::GridSpec grid(static_cast<int>(state.range(0)));
  const fwb::PeriodicFunction f = test_function(grid);
  const fwb::BesovIndex idx{3.0, 2.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwb::besov_norm(f, idx));
  }
}
BENCHMARK(BM_besov_norm)->Arg(1024)->Arg(4096);

void BM_rk4_step(benchmark::State& state) {
  const fwb::GridSpec grid(static_cast<int>(state.range(0)));
  const fwb::State s0 = fwb::initial_state({+1, grid.size() / 16, 3.0}, grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwb::rk4_step(s0, 1e-3));
  }
}
BENCHMARK(BM_rk4_step)->Arg(1024)->Arg(4096);

void BM_predicted_distance(benchmark::State& state) {
  const fwb::GridSpec grid(4096);
  const fwb::BesovIndex idx{3.0, 2.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwb::predicted_distance(256, 3.0, idx, 0.5, grid));
  }
}
BENCHMARK(BM_predicted_distance);

}  // namespace

BENCHMARK_MAIN();
