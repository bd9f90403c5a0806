#include <benchmark/benchmark.h>

#include "adhocids/election.hpp"
#include "adhocids/simulator.hpp"

using namespace adhocids;

namespace {

Topology bench_topology(int nodes, std::uint64_t seed) {
  GeometricSpec spec;
  spec.node_count = nodes;
  spec.area_side = 300.0;
  spec.radio_range = 100.0;
  spec.energy = {EnergyInit::Kind::Uniform, 80.0, 120.0};
  spec.member_drain = 0.02;
  spec.monitor_drain = 1.0;
  return Topology::build_geometric(spec, seed);
}

void BM_SelectMonitors(benchmark::State& state) {
  const Topology t = bench_topology(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) {
    const Pol pol = build_pol(t, 20.0);
    auto a = select_monitors(t, pol, 1);
    benchmark::DoNotOptimize(a.monitors.data());
  }
}
BENCHMARK(BM_SelectMonitors)->Arg(50)->Arg(100)->Unit(benchmark::kMicrosecond);

void BM_HopDistance(benchmark::State& state) {
  const Topology t = bench_topology(static_cast<int>(state.range(0)), 9);
  int a = 0;
  for (auto _ : state) {
    auto d = t.hop_distance(a % t.node_count(), (a * 7 + 3) % t.node_count());
    benchmark::DoNotOptimize(d);
    ++a;
  }
}
BENCHMARK(BM_HopDistance)->Arg(50)->Arg(200);

void BM_SimulationRun(benchmark::State& state) {
  ScenarioConfig cfg;
  cfg.node_count = 50;
  cfg.area_side = 300.0;
  cfg.radio_range = 100.0;
  cfg.energy_init = {EnergyInit::Kind::Uniform, 80.0, 120.0};
  cfg.member_drain = 0.02;
  cfg.monitor_drain = 1.0;
  cfg.threshold = 20.0;
  cfg.ticks = state.range(0);
  cfg.train_count = 0;
  cfg.mode = Mode::Idfadnwca;
  for (auto _ : state) {
    const RunResult r = run(cfg);
    benchmark::DoNotOptimize(r.summary.ticks_executed);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulationRun)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
