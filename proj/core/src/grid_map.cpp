#include "rde/grid_map.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace rde {

GridMap::GridMap(int width, int height, bool all_obstacles)
    : width_(width),
      height_(height),
      cells_(static_cast<size_t>(width) * height, all_obstacles ? 1 : 0) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("GridMap: dimensions must be positive");
  }
}

GridMap GridMap::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw std::invalid_argument("GridMap::from_rows: empty grid");
  }
  GridMap m(static_cast<int>(rows.front().size()),
            static_cast<int>(rows.size()));
  for (int r = 0; r < m.height_; ++r) {
    if (static_cast<int>(rows[r].size()) != m.width_) {
      throw std::invalid_argument("GridMap::from_rows: ragged row " +
                                  std::to_string(r));
    }
    for (int c = 0; c < m.width_; ++c) {
      const char ch = rows[r][c];
      if (ch == '@') {
        m.cells_[m.index({r, c})] = 1;
      } else if (ch != '.') {
        throw std::invalid_argument("GridMap::from_rows: unknown character '" +
                                    std::string(1, ch) + "' in row " +
                                    std::to_string(r));
      }
    }
  }
  return m;
}

void GridMap::set_obstacle(Position p, bool obstacle) {
  if (!in_bounds(p)) {
    throw std::out_of_range("GridMap::set_obstacle: out of bounds");
  }
  cells_[index(p)] = obstacle ? 1 : 0;
}

int GridMap::obstacle_count() const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), 1));
}

double GridMap::obstacle_density() const {
  return static_cast<double>(obstacle_count()) / cell_count();
}

std::vector<Position> GridMap::free_cells() const {
  std::vector<Position> out;
  out.reserve(cells_.size());
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (!cells_[index({r, c})]) out.push_back({r, c});
    }
  }
  return out;
}

bool GridMap::free_cells_connected() const {
  const auto free = free_cells();
  if (free.empty()) return true;

  std::vector<uint8_t> seen(cells_.size(), 0);
  std::queue<Position> q;
  q.push(free.front());
  seen[index(free.front())] = 1;
  size_t reached = 1;
  while (!q.empty()) {
    const Position p = q.front();
    q.pop();
    for (Action a : kMoveActions) {
      const Position n = apply_action(p, a);
      if (!is_free(n) || seen[index(n)]) continue;
      seen[index(n)] = 1;
      ++reached;
      q.push(n);
    }
  }
  return reached == free.size();
}

uint64_t GridMap::content_hash() const {
  uint64_t h = 0xCBF29CE484222325ULL;
  const auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 0x100000001B3ULL;
  };
  mix(static_cast<uint64_t>(width_));
  mix(static_cast<uint64_t>(height_));
  for (uint8_t cell : cells_) mix(cell);
  return h;
}

std::vector<std::string> GridMap::to_rows() const {
  std::vector<std::string> rows(height_, std::string(width_, '.'));
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (cells_[index({r, c})]) rows[r][c] = '@';
    }
  }
  return rows;
}

}  // namespace rde
