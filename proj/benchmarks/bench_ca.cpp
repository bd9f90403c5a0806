#include <benchmark/benchmark.h>

#include "adhocids/ca.hpp"
#include "adhocids/classifier.hpp"
#include "adhocids/ga.hpp"
#include "adhocids/rng.hpp"

using namespace adhocids;

namespace {

void BM_StepBinary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CaRule rule = CaRule::from_number(110);
  Rng rng(1);
  BinaryLattice lat;
  lat.cells.resize(static_cast<std::size_t>(n));
  for (auto& c : lat.cells) c = uniform_bit(rng);
  for (auto _ : state) {
    lat = step_binary(rule, lat);
    benchmark::DoNotOptimize(lat.cells.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_StepBinary)->Arg(64)->Arg(1024);

void BM_StepPacked(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CaRule rule = CaRule::from_number(110);
  std::uint64_t s = 0x5a5a5a5a5a5a5a5aULL & ((n == 64) ? ~0ULL : ((1ULL << n) - 1));
  for (auto _ : state) {
    s = step_packed(rule, s, n);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_StepPacked)->Arg(16)->Arg(64);

void BM_EnumerateBasins(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CaRule rule = CaRule::from_number(90);
  for (auto _ : state) {
    auto part = enumerate_basins(rule, n);
    benchmark::DoNotOptimize(part.attractor_of.data());
  }
  state.SetItemsProcessed(state.iterations() * (1LL << n));
}
BENCHMARK(BM_EnumerateBasins)->Arg(8)->Arg(12)->Arg(16);

void BM_StepFuzzy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (auto& b : bits) b = uniform_bit(rng);
  const DependencyMatrix T = DependencyMatrix::from_bits(bits, n);
  FcaState s;
  s.cells.resize(static_cast<std::size_t>(n));
  for (auto& c : s.cells) c = uniform_double(rng);
  for (auto _ : state) {
    s = step_fuzzy(T, s);
    benchmark::DoNotOptimize(s.cells.data());
  }
}
BENCHMARK(BM_StepFuzzy)->Arg(8)->Arg(16);

void BM_BuildTree(benchmark::State& state) {
  Rng rng(7);
  std::vector<PatternVector> train;
  for (int i = 0; i < 200; ++i) {
    PatternVector p;
    p.bits.resize(8);
    for (auto& b : p.bits) b = uniform_bit(rng);
    p.label = p.bits[0] ^ p.bits[1];
    train.push_back(std::move(p));
  }
  GaConfig ga;
  ga.generations = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const CaTree tree = build_tree(train, TreeConfig{}, ga);
    benchmark::DoNotOptimize(tree.node_count());
  }
}
BENCHMARK(BM_BuildTree)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
