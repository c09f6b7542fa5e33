/*
 * Warehouse-style map generation, instance sampling, and the on-disk map and
 * instance formats (documented in formats.md).
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rde/grid_map.hpp"

namespace rde {

enum class MapKind : uint8_t { Sparse, Dense };

const char* to_string(MapKind k);

struct MapSpec {
  int width = 34;
  int height = 34;
  MapKind kind = MapKind::Sparse;
  double target_rho_o = 0.419;
  uint64_t seed = 0;

  static MapSpec sparse(uint64_t seed = 0) { return {34, 34, MapKind::Sparse, 0.419, seed}; }
  static MapSpec dense(uint64_t seed = 0) { return {34, 34, MapKind::Dense, 0.476, seed}; }
};

// Pod blocks separated by aisles inside a free border ring; Sparse lays 4x4
// pods with 2-wide aisles, Dense 2-row pods with 1-wide aisles. The pattern
// is calibrated to the target obstacle density by seeded carving/padding at
// pod boundaries, keeping the free cells one connected component. Throws
// when the target cannot be reached.
GridMap generate_warehouse_map(const MapSpec& spec);

struct Instance {
  GridMap map;
  std::vector<Position> starts;
  std::vector<Position> goals;

  int num_agents() const { return static_cast<int>(starts.size()); }

  // Starts/goals are distinct free cells and every goal is reachable from
  // its start. Throws std::invalid_argument naming the offending agent.
  void validate() const;
};

// Uniform sampling of distinct free starts and distinct free goals, retried
// a bounded number of times until every goal is reachable.
Instance generate_instance(const GridMap& map, int num_agents, uint64_t seed);

// Agents per free cell.
double agent_density(const GridMap& map, int num_agents);

// Community grid text format: "type octile" / height / width / "map" header,
// then '.' and '@' rows. Parse errors name the line number.
GridMap read_map(const std::filesystem::path& path);
void write_map(const GridMap& map, const std::filesystem::path& path);

// Instance file referencing a map file (path resolved relative to the
// instance file) plus one start/goal line per agent. Validates on read.
Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance,
                    const std::filesystem::path& instance_path,
                    const std::filesystem::path& map_path);

}  // namespace rde
