#include <benchmark/benchmark.h>

#include "kleinb/scattering.hpp"
#include "kleinb/wavefield.hpp"

using namespace kleinb;

namespace {

void BM_AssembleField(benchmark::State& state) {
  const ChannelParams p = make_channel(2.5, 3.0, 0.5, Spin::Up, 2);
  const ScatterAmplitudes a = amplitudes(p);
  GridSpec g = default_grid(p);
  g.ny = g.nz = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_field(p, a, g));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.ny * g.nz));
}
BENCHMARK(BM_AssembleField)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_ContinuityResidual(benchmark::State& state) {
  const ChannelParams p = make_channel(2.0, 6.0, 0.2, Spin::Down, 3);
  const SpinorField f = assemble_field(p, amplitudes(p), default_grid(p));
  for (auto _ : state) benchmark::DoNotOptimize(continuity_residual(f));
}
BENCHMARK(BM_ContinuityResidual);

}  // namespace
