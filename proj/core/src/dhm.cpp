#include "rde/dhm.hpp"

#include <mutex>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "rde/rng.hpp"

namespace rde {

DistanceHeatMap::DistanceHeatMap(Position goal, int width, int height,
                                 std::vector<uint32_t> dist)
    : goal_(goal), width_(width), height_(height), dist_(std::move(dist)) {
  if (static_cast<int>(dist_.size()) != width_ * height_) {
    throw std::invalid_argument("DistanceHeatMap: field size mismatch");
  }
}

uint32_t DistanceHeatMap::at(Position p) const {
  if (p.row < 0 || p.row >= height_ || p.col < 0 || p.col >= width_) {
    throw std::out_of_range("DistanceHeatMap::at: out of bounds");
  }
  return dist_[static_cast<size_t>(p.row) * width_ + p.col];
}

std::string DistanceHeatMap::dump() const {
  std::ostringstream os;
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      if (c > 0) os << ' ';
      const uint32_t d = at({r, c});
      if (d == kInfinite) {
        os << "INF";
      } else {
        os << d;
      }
    }
    os << '\n';
  }
  return os.str();
}

DistanceHeatMap compute_dhm(const GridMap& map, Position goal) {
  if (!map.is_free(goal)) {
    throw std::invalid_argument("compute_dhm: goal is blocked or outside");
  }
  std::vector<uint32_t> dist(static_cast<size_t>(map.cell_count()),
                             DistanceHeatMap::kInfinite);
  // All edges cost one, so breadth-first order is Dijkstra's settle order.
  std::queue<Position> frontier;
  dist[map.index(goal)] = 0;
  frontier.push(goal);
  while (!frontier.empty()) {
    const Position p = frontier.front();
    frontier.pop();
    const uint32_t next = dist[map.index(p)] + 1;
    for (Action a : kMoveActions) {
      const Position n = apply_action(p, a);
      if (!map.is_free(n)) continue;
      auto& slot = dist[map.index(n)];
      if (slot != DistanceHeatMap::kInfinite) continue;
      slot = next;
      frontier.push(n);
    }
  }
  return DistanceHeatMap(goal, map.width(), map.height(), std::move(dist));
}

size_t DhmCache::KeyHash::operator()(const Key& k) const noexcept {
  return static_cast<size_t>(
      mix_seed(k.map_hash, static_cast<uint64_t>(static_cast<uint32_t>(k.row)),
               static_cast<uint64_t>(static_cast<uint32_t>(k.col))));
}

std::shared_ptr<const DistanceHeatMap> DhmCache::get_or_compute(
    const GridMap& map, Position goal) {
  const Key key{map.content_hash(), goal.row, goal.col};
  {
    std::shared_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto fresh = std::make_shared<const DistanceHeatMap>(compute_dhm(map, goal));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.emplace(key, std::move(fresh));
  return it->second;
}

size_t DhmCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace rde
