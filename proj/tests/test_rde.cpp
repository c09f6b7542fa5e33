#include <doctest.h>

#include "rde/bench.hpp"
#include "rde/episode.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rde;

namespace {

// Re-simulates the recorded joint actions and compares positions per step.
void check_replay(const Trace& trace) {
  auto map = std::make_shared<const GridMap>(trace.map);
  EpisodeState state = EpisodeState::initial(map, trace.starts, trace.goals);
  for (const auto& step : trace.steps) {
    state = resolve_step(state, step.actions).state;
    REQUIRE(state.timestep == step.timestep);
    REQUIRE(state.positions() == step.positions);
  }
}

Instance lone_agent_instance(RngStream& rng) {
  for (;;) {
    GridMap map = testing::random_map(16, 16, 0.25, rng);
    const auto free = map.free_cells();
    if (free.size() < 2 || !map.free_cells_connected()) continue;
    Instance inst;
    inst.starts = {free[rng.next_below(free.size())]};
    inst.goals = {free[rng.next_below(free.size())]};
    inst.map = std::move(map);
    return inst;
  }
}

}  // namespace

TEST_CASE("lone agent arrives in exactly dist steps") {
  RngStream rng(404);
  for (int trial = 0; trial < 25; ++trial) {
    const Instance inst = lone_agent_instance(rng);
    const auto field = compute_dhm(inst.map, inst.goals[0]);
    const uint32_t dist = field.at(inst.starts[0]);

    RdeConfig cfg;
    cfg.seed = trial;
    const EpisodeResult result = run_episode(inst, cfg);
    CHECK(result.success);
    CHECK(result.makespan == static_cast<int>(dist));
    CHECK(result.agent_path_costs[0] == static_cast<int>(dist));
    CHECK(result.usage.total() ==
          static_cast<long>(result.trace.steps.size()));
    check_replay(result.trace);
  }
}

TEST_CASE("unreachable goal times out at the cap") {
  Instance inst;
  inst.map = GridMap::from_rows({"..@..", "..@..", "..@.."});
  inst.starts = {{1, 0}};
  inst.goals = {{1, 4}};  // other side of the wall

  RdeConfig cfg;
  const EpisodeResult result = run_episode(inst, cfg);
  CHECK_FALSE(result.success);
  CHECK(result.failure == FailureKind::Timeout);
  CHECK(result.makespan == 150);
  CHECK(result.agent_path_costs[0] == 150);
}

TEST_CASE("joint action source labels follow the dispatch") {
  RdeConfig cfg;
  DhmCache cache;
  CoopBaselinePolicy coop;

  SUBCASE("lone agent mid-map uses the heat-map policy") {
    auto state =
        EpisodeState::initial(std::make_shared<const GridMap>(20, 20),
                              {{10, 10}}, {{0, 0}});
    std::vector<std::shared_ptr<const DistanceHeatMap>> dhms{
        cache.get_or_compute(*state.map, {0, 0})};
    std::vector<RngStream> rngs{RngStream(1)};
    const auto jd = rde_joint_action(state, cfg, dhms, rngs, coop);
    CHECK(jd.sources[0] == PolicySource::Dhm);
    CHECK(jd.actions[0] != Action::Stay);
  }

  SUBCASE("adjacent agents use the cooperative policy") {
    auto state =
        EpisodeState::initial(std::make_shared<const GridMap>(20, 20),
                              {{10, 10}, {10, 11}}, {{0, 0}, {19, 19}});
    std::vector<std::shared_ptr<const DistanceHeatMap>> dhms{
        cache.get_or_compute(*state.map, {0, 0}),
        cache.get_or_compute(*state.map, {19, 19})};
    std::vector<RngStream> rngs{RngStream(1), RngStream(2)};
    const auto jd = rde_joint_action(state, cfg, dhms, rngs, coop);
    CHECK(jd.sources[0] == PolicySource::Cooperative);
    CHECK(jd.sources[1] == PolicySource::Cooperative);
  }

  SUBCASE("ablation arm routes everything to the cooperative policy") {
    cfg.enable_dhm_policy = false;
    cfg.enable_escape = false;
    auto state =
        EpisodeState::initial(std::make_shared<const GridMap>(20, 20),
                              {{10, 10}}, {{0, 0}});
    std::vector<std::shared_ptr<const DistanceHeatMap>> dhms{
        cache.get_or_compute(*state.map, {0, 0})};
    std::vector<RngStream> rngs{RngStream(1)};
    const auto jd = rde_joint_action(state, cfg, dhms, rngs, coop);
    CHECK(jd.sources[0] == PolicySource::Cooperative);
  }
}

TEST_CASE("baseline arm never uses DHM or escape") {
  const GridMap map = generate_warehouse_map(MapSpec::sparse(5));
  const Instance inst = generate_instance(map, 12, 5);
  RdeConfig cfg;
  apply_arm(cfg, Arm::Baseline);
  const EpisodeResult result = run_episode(inst, cfg);
  CHECK(result.usage.dhm == 0);
  CHECK(result.usage.escape == 0);
  CHECK(result.usage.cooperative ==
        12 * static_cast<long>(result.trace.steps.size()));
  for (const auto& step : result.trace.steps) {
    for (PolicySource s : step.sources) {
      CHECK(s == PolicySource::Cooperative);
    }
  }
}

TEST_CASE("multi-agent traces replay exactly and stay conflict-free") {
  const GridMap map = generate_warehouse_map(MapSpec::dense(8));
  for (uint64_t seed = 0; seed < 6; ++seed) {
    const Instance inst = generate_instance(map, 30, seed);
    RdeConfig cfg;
    cfg.seed = seed;
    const EpisodeResult result = run_episode(inst, cfg, seed);
    check_replay(result.trace);

    std::vector<Position> prev = inst.starts;
    for (const auto& step : result.trace.steps) {
      const auto counts = testing::count_conflicts(prev, step.positions);
      CHECK(counts.vertex == 0);
      CHECK(counts.edge == 0);
      prev = step.positions;
    }
    CHECK(result.usage.total() ==
          30 * static_cast<long>(result.trace.steps.size()));
  }
}

TEST_CASE("identical seeds give byte-identical episodes") {
  const GridMap map = generate_warehouse_map(MapSpec::dense(2));
  const Instance inst = generate_instance(map, 25, 77);
  RdeConfig cfg;
  cfg.seed = 99;
  const EpisodeResult a = run_episode(inst, cfg, 4);
  const EpisodeResult b = run_episode(inst, cfg, 4);
  REQUIRE(a.trace.steps.size() == b.trace.steps.size());
  for (size_t i = 0; i < a.trace.steps.size(); ++i) {
    CHECK(a.trace.steps[i].positions == b.trace.steps[i].positions);
    CHECK(a.trace.steps[i].actions == b.trace.steps[i].actions);
    CHECK(a.trace.steps[i].sources == b.trace.steps[i].sources);
  }
  CHECK(a.success == b.success);
  CHECK(a.makespan == b.makespan);

  const EpisodeResult c = run_episode(inst, cfg, 5);  // different episode id
  const bool same = a.trace.steps.size() == c.trace.steps.size() &&
                    [&] {
                      for (size_t i = 0; i < a.trace.steps.size(); ++i) {
                        if (!(a.trace.steps[i].actions ==
                              c.trace.steps[i].actions)) {
                          return false;
                        }
                      }
                      return true;
                    }();
  CHECK_FALSE(same);
}

TEST_CASE("escape wiring is inert when nobody deadlocks") {
  RngStream rng(2218);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = lone_agent_instance(rng);
    RdeConfig with;
    with.seed = trial;
    RdeConfig without = with;
    without.enable_escape = false;
    const EpisodeResult a = run_episode(inst, with, 3);
    const EpisodeResult b = run_episode(inst, without, 3);
    CHECK(a.usage.escape == 0);
    REQUIRE(a.trace.steps.size() == b.trace.steps.size());
    for (size_t i = 0; i < a.trace.steps.size(); ++i) {
      CHECK(a.trace.steps[i].positions == b.trace.steps[i].positions);
      CHECK(a.trace.steps[i].actions == b.trace.steps[i].actions);
    }
  }
}

TEST_CASE("corridor duel: escape unjams, no escape stalls forever") {
  const Instance duel = testing::corridor_duel();

  RdeConfig with;
  with.enable_escape = true;
  RdeConfig without = with;
  without.enable_escape = false;

  int wins_with = 0, wins_without = 0;
  const int kSeeds = 30;
  for (uint64_t seed = 0; seed < kSeeds; ++seed) {
    with.seed = seed;
    without.seed = seed;
    if (run_episode(duel, with, seed, nullptr, false).success) ++wins_with;
    if (run_episode(duel, without, seed, nullptr, false).success) {
      ++wins_without;
    }
  }
  CHECK(wins_without == 0);  // deterministic head-on jam
  CHECK(wins_with > kSeeds / 3);
}

TEST_CASE("escape usage shows up in the duel") {
  const Instance duel = testing::corridor_duel();
  RdeConfig cfg;
  cfg.seed = 1;
  const EpisodeResult result = run_episode(duel, cfg);
  CHECK(result.usage.escape > 0);
}
