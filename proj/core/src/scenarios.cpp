#include "rde/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "rde/rng.hpp"

namespace rde {

const char* to_string(MapKind k) {
  return k == MapKind::Sparse ? "sparse" : "dense";
}

namespace {

// Component label per cell (-1 for obstacles); one flood fill pass.
std::vector<int> component_labels(const GridMap& map) {
  std::vector<int> labels(static_cast<size_t>(map.cell_count()), -1);
  int next = 0;
  for (const Position seed : map.free_cells()) {
    if (labels[map.index(seed)] != -1) continue;
    std::queue<Position> q;
    labels[map.index(seed)] = next;
    q.push(seed);
    while (!q.empty()) {
      const Position p = q.front();
      q.pop();
      for (Action a : kMoveActions) {
        const Position n = apply_action(p, a);
        if (!map.is_free(n) || labels[map.index(n)] != -1) continue;
        labels[map.index(n)] = next;
        q.push(n);
      }
    }
    ++next;
  }
  return labels;
}

// Greedy bands of `band` blocked lines separated by `aisle` free lines.
std::vector<bool> bands_by_pitch(int length, int band, int aisle) {
  std::vector<bool> blocked(length, false);
  for (int pos = 0; pos < length; pos += band + aisle) {
    for (int i = 0; i < band && pos + i < length; ++i) blocked[pos + i] = true;
  }
  return blocked;
}

// Exactly `blocked_count` blocked lines split into bands separated by
// `aisle` free lines, leftover free lines pushed to the margins.
std::vector<bool> bands_by_count(int length, int blocked_count, int aisle) {
  if (blocked_count <= 0 || blocked_count > length) {
    throw std::invalid_argument("bands_by_count: count out of range");
  }
  const int free = length - blocked_count;
  int nbands = free / aisle + 1;
  nbands = std::min(nbands, blocked_count);
  const int margin = free - (nbands - 1) * aisle;

  std::vector<bool> blocked(length, false);
  int pos = margin / 2;
  const int base = blocked_count / nbands;
  int remainder = blocked_count % nbands;
  for (int b = 0; b < nbands; ++b) {
    const int width = base + (remainder-- > 0 ? 1 : 0);
    for (int i = 0; i < width; ++i) blocked[pos + i] = true;
    pos += width + aisle;
  }
  return blocked;
}

bool adjacent_to_free(const GridMap& map, Position p) {
  for (Action a : kMoveActions) {
    if (map.is_free(apply_action(p, a))) return true;
  }
  return false;
}

bool adjacent_to_obstacle(const GridMap& map, Position p) {
  for (Action a : kMoveActions) {
    const Position n = apply_action(p, a);
    if (map.in_bounds(n) && map.is_obstacle(n)) return true;
  }
  return false;
}

// Carve (count above target) or pad (below) one cell at a time. Carving a
// pod-boundary cell attaches a new free cell to the existing component;
// padding re-checks connectivity before committing.
void calibrate_to_count(GridMap& map, int target_obstacles, RngStream& rng) {
  int guard = map.cell_count() * 4;
  while (map.obstacle_count() != target_obstacles && guard-- > 0) {
    if (map.obstacle_count() > target_obstacles) {
      std::vector<Position> candidates;
      for (int r = 1; r < map.height() - 1; ++r) {
        for (int c = 1; c < map.width() - 1; ++c) {
          const Position p{r, c};
          if (map.is_obstacle(p) && adjacent_to_free(map, p)) {
            candidates.push_back(p);
          }
        }
      }
      if (candidates.empty()) break;
      map.set_obstacle(rng.pick(candidates), false);
    } else {
      std::vector<Position> candidates;
      for (int r = 1; r < map.height() - 1; ++r) {
        for (int c = 1; c < map.width() - 1; ++c) {
          const Position p{r, c};
          if (map.is_free(p) && adjacent_to_obstacle(map, p)) {
            candidates.push_back(p);
          }
        }
      }
      bool placed = false;
      while (!candidates.empty() && !placed) {
        const uint32_t pick = rng.next_below(
            static_cast<uint32_t>(candidates.size()));
        const Position p = candidates[pick];
        candidates.erase(candidates.begin() + pick);
        map.set_obstacle(p, true);
        if (map.free_cells_connected()) {
          placed = true;
        } else {
          map.set_obstacle(p, false);
        }
      }
      if (!placed) break;
    }
  }
}

}  // namespace

GridMap generate_warehouse_map(const MapSpec& spec) {
  if (spec.width < 5 || spec.height < 5) {
    throw std::invalid_argument("generate_warehouse_map: map too small");
  }
  if (spec.target_rho_o <= 0.0 || spec.target_rho_o >= 1.0) {
    throw std::invalid_argument("generate_warehouse_map: bad target density");
  }

  const int cells = spec.width * spec.height;
  const int target_obstacles =
      static_cast<int>(std::lround(spec.target_rho_o * cells));
  const int interior_h = spec.height - 2;
  const int interior_w = spec.width - 2;

  // Row bands come from the pod geometry of the kind; column bands are then
  // counted out so the separable pattern lands on the target.
  const int band = spec.kind == MapKind::Sparse ? 4 : 2;
  const int aisle = spec.kind == MapKind::Sparse ? 2 : 1;
  const auto row_blocked = bands_by_pitch(interior_h, band, aisle);
  const int blocked_rows = static_cast<int>(
      std::count(row_blocked.begin(), row_blocked.end(), true));
  if (blocked_rows == 0) {
    throw std::invalid_argument("generate_warehouse_map: no room for pods");
  }
  int blocked_cols = static_cast<int>(
      std::lround(static_cast<double>(target_obstacles) / blocked_rows));
  blocked_cols = std::clamp(blocked_cols, 1, interior_w);
  const auto col_blocked = bands_by_count(interior_w, blocked_cols, aisle);

  GridMap map(spec.width, spec.height);
  for (int r = 0; r < interior_h; ++r) {
    for (int c = 0; c < interior_w; ++c) {
      if (row_blocked[r] && col_blocked[c]) {
        map.set_obstacle({r + 1, c + 1}, true);
      }
    }
  }

  RngStream rng = RngStream::derive(spec.seed, 0x3A9D,
                                    static_cast<uint64_t>(spec.kind));
  calibrate_to_count(map, target_obstacles, rng);

  if (std::abs(map.obstacle_density() - spec.target_rho_o) > 0.02) {
    throw std::runtime_error(
        "generate_warehouse_map: target density unreachable for " +
        std::to_string(spec.width) + "x" + std::to_string(spec.height));
  }
  if (!map.free_cells_connected()) {
    throw std::runtime_error(
        "generate_warehouse_map: free cells not connected");
  }
  return map;
}

void Instance::validate() const {
  const int m = num_agents();
  if (static_cast<int>(goals.size()) != m) {
    throw std::invalid_argument("instance: starts/goals count mismatch");
  }
  const auto labels = component_labels(map);
  std::vector<uint8_t> start_taken(map.cell_count(), 0);
  std::vector<uint8_t> goal_taken(map.cell_count(), 0);
  for (int i = 0; i < m; ++i) {
    const auto agent = std::to_string(i);
    if (!map.is_free(starts[i])) {
      throw std::invalid_argument("agent " + agent +
                                  ": start is not a free cell");
    }
    if (!map.is_free(goals[i])) {
      throw std::invalid_argument("agent " + agent +
                                  ": goal is not a free cell");
    }
    if (start_taken[map.index(starts[i])]++) {
      throw std::invalid_argument("agent " + agent + ": duplicate start");
    }
    if (goal_taken[map.index(goals[i])]++) {
      throw std::invalid_argument("agent " + agent + ": duplicate goal");
    }
    if (labels[map.index(starts[i])] != labels[map.index(goals[i])]) {
      throw std::invalid_argument("agent " + agent +
                                  ": goal unreachable from start");
    }
  }
}

Instance generate_instance(const GridMap& map, int num_agents,
                           uint64_t seed) {
  if (num_agents < 0) {
    throw std::invalid_argument("generate_instance: negative agent count");
  }
  const auto free = map.free_cells();
  if (num_agents > static_cast<int>(free.size())) {
    throw std::invalid_argument(
        "generate_instance: more agents than free cells");
  }

  RngStream rng = RngStream::derive(seed, 0x1257,
                                    static_cast<uint64_t>(num_agents));
  const auto labels = component_labels(map);

  const auto sample_distinct = [&](std::vector<Position> pool) {
    for (int i = 0; i < num_agents; ++i) {
      const uint32_t j =
          i + rng.next_below(static_cast<uint32_t>(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(num_agents);
    return pool;
  };

  constexpr int kMaxAttempts = 20;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Instance inst;
    inst.map = map;
    inst.starts = sample_distinct(free);
    inst.goals = sample_distinct(free);
    bool reachable = true;
    for (int i = 0; i < num_agents && reachable; ++i) {
      reachable = labels[map.index(inst.starts[i])] ==
                  labels[map.index(inst.goals[i])];
    }
    if (reachable) return inst;
  }
  throw std::runtime_error(
      "generate_instance: connectivity check failed after retries");
}

double agent_density(const GridMap& map, int num_agents) {
  if (num_agents < 0) {
    throw std::invalid_argument("agent_density: negative agent count");
  }
  if (num_agents == 0) return 0.0;
  return static_cast<double>(num_agents) / map.free_count();
}

}  // namespace rde
