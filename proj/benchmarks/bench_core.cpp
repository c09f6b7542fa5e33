#include <benchmark/benchmark.h>

#include "rde/bench.hpp"

namespace {

using namespace rde;

void BM_ComputeDhm(benchmark::State& state) {
  const auto spec = state.range(0) == 0 ? MapSpec::sparse() : MapSpec::dense();
  const GridMap map = generate_warehouse_map(spec);
  const auto free = map.free_cells();
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compute_dhm(map, free[i++ % free.size()]));
  }
}
BENCHMARK(BM_ComputeDhm)->Arg(0)->Arg(1);

void BM_ResolveStep(benchmark::State& state) {
  const int agents = static_cast<int>(state.range(0));
  const GridMap raw = generate_warehouse_map(MapSpec::dense());
  const Instance instance = generate_instance(raw, agents, 1);
  auto map = std::make_shared<const GridMap>(instance.map);
  const EpisodeState start =
      EpisodeState::initial(map, instance.starts, instance.goals);
  RngStream rng(9);
  std::vector<Action> joint(agents);
  for (auto _ : state) {
    for (auto& a : joint) a = static_cast<Action>(rng.next_below(5));
    benchmark::DoNotOptimize(resolve_step(start, joint));
  }
}
BENCHMARK(BM_ResolveStep)->Arg(10)->Arg(70);

void BM_Episode(benchmark::State& state) {
  const int agents = static_cast<int>(state.range(0));
  const GridMap map = generate_warehouse_map(MapSpec::dense());
  DhmCache cache;
  RdeConfig cfg;
  uint64_t seed = 0;
  for (auto _ : state) {
    const Instance instance = generate_instance(map, agents, seed++);
    benchmark::DoNotOptimize(
        run_episode(instance, cfg, seed, &cache, /*record_trace=*/false));
  }
}
BENCHMARK(BM_Episode)->Arg(10)->Arg(70)->Unit(benchmark::kMillisecond);

void BM_GenerateWarehouseMap(benchmark::State& state) {
  uint64_t seed = 0;
  for (auto _ : state) {
    MapSpec spec = MapSpec::dense(seed++);
    benchmark::DoNotOptimize(generate_warehouse_map(spec));
  }
}
BENCHMARK(BM_GenerateWarehouseMap);

}  // namespace

BENCHMARK_MAIN();
