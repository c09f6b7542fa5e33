#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rde/rng.hpp"
#include "rde/scenarios.hpp"

using namespace rde;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const char* tag) {
  static RngStream rng(std::random_device{}());
  const auto dir = fs::temp_directory_path() /
                   (std::string("rde_") + tag + "_" +
                    std::to_string(rng.next_u64() & 0xFFFFFF));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

bool border_free(const GridMap& map) {
  for (int c = 0; c < map.width(); ++c) {
    if (map.is_obstacle({0, c}) || map.is_obstacle({map.height() - 1, c})) {
      return false;
    }
  }
  for (int r = 0; r < map.height(); ++r) {
    if (map.is_obstacle({r, 0}) || map.is_obstacle({r, map.width() - 1})) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("sparse maps land on the target density") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const GridMap map = generate_warehouse_map(MapSpec::sparse(seed));
    CHECK(map.width() == 34);
    CHECK(map.height() == 34);
    CHECK(map.obstacle_density() == doctest::Approx(0.419).epsilon(0.05));
    CHECK(std::abs(map.obstacle_density() - 0.419) <= 0.02);
    CHECK(map.free_cells_connected());
    CHECK(border_free(map));
  }
}

TEST_CASE("dense maps land on the target density") {
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const GridMap map = generate_warehouse_map(MapSpec::dense(seed));
    CHECK(std::abs(map.obstacle_density() - 0.476) <= 0.02);
    CHECK(map.free_cells_connected());
    CHECK(border_free(map));
  }
}

TEST_CASE("off-spec sizes still calibrate") {
  for (int size : {18, 25, 40}) {
    for (MapKind kind : {MapKind::Sparse, MapKind::Dense}) {
      MapSpec spec = kind == MapKind::Sparse ? MapSpec::sparse(7)
                                             : MapSpec::dense(7);
      spec.width = size;
      spec.height = size;
      const GridMap map = generate_warehouse_map(spec);
      CHECK(std::abs(map.obstacle_density() - spec.target_rho_o) <= 0.02);
      CHECK(map.free_cells_connected());
    }
  }
}

TEST_CASE("maps are deterministic per seed") {
  const GridMap a = generate_warehouse_map(MapSpec::dense(3));
  const GridMap b = generate_warehouse_map(MapSpec::dense(3));
  CHECK(a == b);
}

TEST_CASE("unreachable target density raises") {
  MapSpec spec = MapSpec::dense(0);
  spec.width = 10;
  spec.height = 10;
  spec.target_rho_o = 0.97;  // border ring alone caps density at 0.64
  CHECK_THROWS(generate_warehouse_map(spec));
  MapSpec tiny = MapSpec::sparse(0);
  tiny.width = 4;
  tiny.height = 4;
  CHECK_THROWS_AS(generate_warehouse_map(tiny), std::invalid_argument);
}

TEST_CASE("agent density reproduces the published map table") {
  const GridMap sparse = generate_warehouse_map(MapSpec::sparse(0));
  const GridMap dense = generate_warehouse_map(MapSpec::dense(0));
  CHECK(std::abs(agent_density(sparse, 10) - 1.49e-2) <= 0.05e-2);
  CHECK(std::abs(agent_density(dense, 10) - 1.65e-2) <= 0.05e-2);
  CHECK(std::abs(agent_density(sparse, 70) - 10.42e-2) <= 0.35e-2);
  CHECK(std::abs(agent_density(dense, 70) - 11.56e-2) <= 0.35e-2);
  CHECK(agent_density(dense, 0) == 0.0);
  CHECK_THROWS_AS(agent_density(dense, -1), std::invalid_argument);
}

TEST_CASE("instances sample distinct reachable cells") {
  const GridMap map = generate_warehouse_map(MapSpec::dense(1));
  const Instance inst = generate_instance(map, 70, 99);
  CHECK(inst.num_agents() == 70);
  CHECK_NOTHROW(inst.validate());

  const Instance again = generate_instance(map, 70, 99);
  CHECK(again.starts == inst.starts);
  CHECK(again.goals == inst.goals);

  const Instance other = generate_instance(map, 70, 100);
  CHECK(other.starts != inst.starts);
}

TEST_CASE("instance sampling boundary cases") {
  GridMap map(4, 2);  // eight free cells
  const int free = map.free_count();
  CHECK_NOTHROW(generate_instance(map, free, 5).validate());
  CHECK_THROWS_AS(generate_instance(map, free + 1, 5),
                  std::invalid_argument);
  CHECK(generate_instance(map, 0, 5).num_agents() == 0);
}

TEST_CASE("map files round-trip") {
  const auto dir = make_temp_dir("map");
  for (const GridMap& map :
       {generate_warehouse_map(MapSpec::sparse(2)), GridMap(2, 2)}) {
    const auto path = dir / "m.map";
    write_map(map, path);
    CHECK(read_map(path) == map);
  }
  CHECK(slurp(dir / "m.map").rfind("type octile\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("map parse errors name the line") {
  const auto dir = make_temp_dir("badmap");
  const auto path = dir / "bad.map";

  spit(path, "type octile\nheight 2\nwidth 3\nmap\n...\n..\n");
  try {
    read_map(path);
    FAIL("expected ragged row error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(":6") != std::string::npos);
  }

  spit(path, "type octile\nheight 1\nwidth 3\nmap\n.x.\n");
  CHECK_THROWS_WITH_AS(read_map(path),
                       doctest::Contains("unknown cell character"),
                       std::runtime_error);

  spit(path, "type octile\nheight 1\nmap\n...\n");
  CHECK_THROWS(read_map(path));
  fs::remove_all(dir);
}

TEST_CASE("instance files round-trip and validate") {
  const auto dir = make_temp_dir("inst");
  const GridMap map = generate_warehouse_map(MapSpec::sparse(4));
  write_map(map, dir / "w.map");
  const Instance inst = generate_instance(map, 12, 7);
  write_instance(inst, dir / "a.inst", "w.map");

  const Instance loaded = read_instance(dir / "a.inst");
  CHECK(loaded.map == inst.map);
  CHECK(loaded.starts == inst.starts);
  CHECK(loaded.goals == inst.goals);

  // dangling map reference
  write_instance(inst, dir / "b.inst", "missing.map");
  CHECK_THROWS_WITH_AS(read_instance(dir / "b.inst"),
                       doctest::Contains("not found"), std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("instance validation points at the offending agent") {
  GridMap map(5, 5);
  map.set_obstacle({2, 2}, true);

  Instance on_obstacle{map, {{0, 0}, {2, 2}}, {{4, 4}, {4, 3}}};
  CHECK_THROWS_WITH_AS(on_obstacle.validate(),
                       doctest::Contains("agent 1"), std::invalid_argument);

  Instance dup_goal{map, {{0, 0}, {0, 1}}, {{4, 4}, {4, 4}}};
  CHECK_THROWS_WITH_AS(dup_goal.validate(), doctest::Contains("duplicate goal"),
                       std::invalid_argument);

  GridMap pocket = GridMap::from_rows({"@@@@@", "@.@.@", "@@@@@"});
  Instance unreachable{pocket, {{1, 1}}, {{1, 3}}};
  CHECK_THROWS_WITH_AS(unreachable.validate(),
                       doctest::Contains("unreachable"), std::invalid_argument);
}

TEST_CASE("validator rejects 1000 fuzzed corruptions") {
  const auto dir = make_temp_dir("fuzz");
  const GridMap map = generate_warehouse_map(MapSpec::dense(9));
  write_map(map, dir / "w.map");
  const Instance base = generate_instance(map, 8, 21);
  write_instance(base, dir / "base.inst", "w.map");
  const std::string valid_text = slurp(dir / "base.inst");
  REQUIRE_NOTHROW(read_instance(dir / "base.inst"));

  // one obstacle cell for the "start on obstacle" class
  Position obstacle{-1, -1};
  for (int r = 0; r < map.height() && obstacle.row < 0; ++r) {
    for (int c = 0; c < map.width(); ++c) {
      if (map.is_obstacle({r, c})) {
        obstacle = {r, c};
        break;
      }
    }
  }
  REQUIRE(obstacle.row >= 0);

  RngStream rng(31337);
  int rejected = 0;
  const int kTrials = 1000;
  for (int trial = 0; trial < kTrials; ++trial) {
    Instance bad = base;
    std::string text;
    switch (rng.next_below(8)) {
      case 0:  // duplicate goal
        bad.goals[3] = bad.goals[5];
        write_instance(bad, dir / "f.inst", "w.map");
        break;
      case 1:  // duplicate start
        bad.starts[0] = bad.starts[7];
        write_instance(bad, dir / "f.inst", "w.map");
        break;
      case 2:  // start moved onto an obstacle
        bad.starts[2] = obstacle;
        write_instance(bad, dir / "f.inst", "w.map");
        break;
      case 3:  // out-of-bounds goal
        bad.goals[1] = {map.height() + static_cast<int>(rng.next_below(50)),
                        0};
        write_instance(bad, dir / "f.inst", "w.map");
        break;
      case 4: {  // whole trailing lines dropped
        text = valid_text;
        const int drop = 1 + rng.next_below(3);
        for (int d = 0; d < drop; ++d) {
          text.resize(text.find_last_of('\n', text.size() - 2) + 1);
        }
        spit(dir / "f.inst", text);
        break;
      }
      case 5:  // corrupted header keyword
        text = valid_text;
        text[rng.next_below(12)] = '#';
        spit(dir / "f.inst", text);
        break;
      case 6: {  // agent count inflated past the agent lines
        text = valid_text;
        const auto pos = text.find("agents 8");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 8, "agents 9");
        spit(dir / "f.inst", text);
        break;
      }
      case 7: {  // junk agent line
        text = valid_text;
        text.replace(text.rfind('\n', text.size() - 2) + 1,
                     std::string::npos, "x y z\n");
        spit(dir / "f.inst", text);
        break;
      }
    }
    try {
      read_instance(dir / "f.inst");
    } catch (const std::exception&) {
      ++rejected;
    }
  }
  CHECK(rejected == kTrials);
  fs::remove_all(dir);
}
