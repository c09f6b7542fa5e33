/*
 * Distance heat maps: per-goal shortest-distance fields over the grid.
 *
 * The field holds, for every cell, the length of the shortest path from the
 * goal to that cell. Obstacles and cells the goal cannot reach hold the
 * infinite sentinel, so arithmetic misuse is detectable instead of silently
 * producing huge finite values.
 */
#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "rde/grid_map.hpp"

namespace rde {

class DistanceHeatMap {
 public:
  static constexpr uint32_t kInfinite = std::numeric_limits<uint32_t>::max();

  DistanceHeatMap(Position goal, int width, int height,
                  std::vector<uint32_t> dist);

  Position goal() const { return goal_; }
  int width() const { return width_; }
  int height() const { return height_; }

  // Stored value at pos; kInfinite for obstacles and unreachable cells.
  // Throws std::out_of_range when pos is off the map.
  uint32_t at(Position p) const;

  bool finite_at(Position p) const { return at(p) != kInfinite; }

  // Text grid for eyeballing a field; infinite cells print as "INF".
  std::string dump() const;

  bool operator==(const DistanceHeatMap&) const = default;

 private:
  Position goal_;
  int width_ = 0;
  int height_ = 0;
  std::vector<uint32_t> dist_;
};

// Breadth-first flood from the goal. On a unit-cost grid this computes the
// same field as Dijkstra, one relaxation per cell. Throws when the goal is an
// obstacle or out of bounds.
DistanceHeatMap compute_dhm(const GridMap& map, Position goal);

// Keyed by (map content hash, goal) so episodes sharing goals reuse fields.
// Concurrent reads are lock-shared; insertion is exclusive. Two threads may
// race to compute the same key; the results are identical so either wins.
class DhmCache {
 public:
  std::shared_ptr<const DistanceHeatMap> get_or_compute(const GridMap& map,
                                                        Position goal);
  size_t size() const;

 private:
  struct Key {
    uint64_t map_hash;
    int row;
    int col;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    size_t operator()(const Key& k) const noexcept;
  };

  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, std::shared_ptr<const DistanceHeatMap>, KeyHash>
      entries_;
};

inline std::shared_ptr<const DistanceHeatMap> get_or_compute(
    DhmCache& cache, const GridMap& map, Position goal) {
  return cache.get_or_compute(map, goal);
}

}  // namespace rde
