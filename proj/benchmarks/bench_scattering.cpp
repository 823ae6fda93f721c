#include <benchmark/benchmark.h>

#include <vector>

#include "kleinb/landau.hpp"
#include "kleinb/sampling.hpp"
#include "kleinb/scattering.hpp"

using namespace kleinb;

namespace {

const std::vector<ChannelParams>& points() {
  static const std::vector<ChannelParams> grid = sample_grid(kDefaultSeed, 4096);
  return grid;
}

void BM_ClosedForm(benchmark::State& state) {
  const auto& grid = points();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(amplitudes(grid[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ClosedForm);

void BM_BoundarySolve(benchmark::State& state) {
  const auto& grid = points();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_boundary_system(grid[i++ & 4095]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_BoundarySolve);

void BM_Budget(benchmark::State& state) {
  const auto& grid = points();
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(current_budget(grid[i++ & 4095]));
  }
}
BENCHMARK(BM_Budget);

void BM_Oscillator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double xi = -3.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(oscillator(n, xi));
    xi = xi > 3.0 ? -3.0 : xi + 0.01;
  }
}
BENCHMARK(BM_Oscillator)->Arg(1)->Arg(20)->Arg(200);

void BM_OscillatorTable(benchmark::State& state) {
  std::vector<double> out(static_cast<std::size_t>(state.range(0)) + 1);
  for (auto _ : state) {
    oscillator_table(1.3, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_OscillatorTable)->Arg(20)->Arg(200);

}  // namespace
BENCHMARK_MAIN();
