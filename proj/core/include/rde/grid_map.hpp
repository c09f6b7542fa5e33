/*
 * Static occupancy grid, four-connected, unit cells, row-major storage.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rde/types.hpp"

namespace rde {

class GridMap {
 public:
  GridMap() = default;
  GridMap(int width, int height, bool all_obstacles = false);

  // Rows of '.' (free) and '@' (obstacle). Throws on ragged rows or unknown
  // characters.
  static GridMap from_rows(const std::vector<std::string>& rows);

  int width() const { return width_; }
  int height() const { return height_; }
  int cell_count() const { return width_ * height_; }

  bool in_bounds(Position p) const {
    return p.row >= 0 && p.row < height_ && p.col >= 0 && p.col < width_;
  }
  bool is_obstacle(Position p) const { return cells_[index(p)] != 0; }
  bool is_free(Position p) const { return in_bounds(p) && !is_obstacle(p); }

  void set_obstacle(Position p, bool obstacle);

  int obstacle_count() const;
  int free_count() const { return cell_count() - obstacle_count(); }
  double obstacle_density() const;

  std::vector<Position> free_cells() const;

  // True when every free cell can reach every other free cell.
  bool free_cells_connected() const;

  // FNV-1a over dimensions and cells; keys heat-map caches so a mutated map
  // can never serve a stale field.
  uint64_t content_hash() const;

  std::vector<std::string> to_rows() const;

  size_t index(Position p) const {
    return static_cast<size_t>(p.row) * width_ + p.col;
  }

  bool operator==(const GridMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> cells_;  // 1 = obstacle
};

}  // namespace rde
