/*
 * Per-agent state and the episode-wide world state.
 */
#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "rde/grid_map.hpp"
#include "rde/types.hpp"

namespace rde {

// Rolling window over the last five visited positions, current one included.
// Grows by exactly one entry per executed step.
class PositionHistory {
 public:
  static constexpr int kCapacity = 5;

  void push(Position p) {
    if (size_ < kCapacity) {
      buf_[size_++] = p;
    } else {
      for (int i = 1; i < kCapacity; ++i) buf_[i - 1] = buf_[i];
      buf_[kCapacity - 1] = p;
    }
  }

  int size() const { return size_; }
  bool full() const { return size_ == kCapacity; }

  // Position k steps ago; back(0) is the current position.
  Position back(int k = 0) const { return buf_[size_ - 1 - k]; }

  bool operator==(const PositionHistory&) const = default;

 private:
  std::array<Position, kCapacity> buf_{};
  int size_ = 0;
};

struct AgentState {
  int id = 0;
  Position pos;
  Position goal;
  PositionHistory history;              // tail always equals pos
  std::optional<Action> prev_dir;       // empty after a Stay and at t = 0

  static AgentState at_start(int id, Position start, Position goal) {
    AgentState a;
    a.id = id;
    a.pos = start;
    a.goal = goal;
    a.history.push(start);
    return a;
  }

  bool at_goal() const { return pos == goal; }
};

struct EpisodeState {
  int timestep = 0;
  std::shared_ptr<const GridMap> map;
  std::vector<AgentState> agents;

  static EpisodeState initial(std::shared_ptr<const GridMap> map,
                              const std::vector<Position>& starts,
                              const std::vector<Position>& goals);

  std::vector<Position> positions() const;

  // Enforces the world invariant: agents on distinct free cells.
  // Throws std::invalid_argument naming the offending agent.
  void validate() const;
};

}  // namespace rde
