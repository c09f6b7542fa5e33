#include "rde/agent.hpp"

#include <stdexcept>
#include <string>
#include <unordered_set>

namespace rde {

EpisodeState EpisodeState::initial(std::shared_ptr<const GridMap> map,
                                   const std::vector<Position>& starts,
                                   const std::vector<Position>& goals) {
  if (!map) throw std::invalid_argument("EpisodeState: null map");
  if (starts.size() != goals.size()) {
    throw std::invalid_argument("EpisodeState: starts/goals size mismatch");
  }
  EpisodeState s;
  s.map = std::move(map);
  s.agents.reserve(starts.size());
  for (size_t i = 0; i < starts.size(); ++i) {
    s.agents.push_back(
        AgentState::at_start(static_cast<int>(i), starts[i], goals[i]));
  }
  s.validate();
  return s;
}

std::vector<Position> EpisodeState::positions() const {
  std::vector<Position> out;
  out.reserve(agents.size());
  for (const auto& a : agents) out.push_back(a.pos);
  return out;
}

void EpisodeState::validate() const {
  std::unordered_set<Position> seen;
  for (const auto& a : agents) {
    if (!map->is_free(a.pos)) {
      throw std::invalid_argument("agent " + std::to_string(a.id) +
                                  " is not on a free cell");
    }
    if (!seen.insert(a.pos).second) {
      throw std::invalid_argument("agent " + std::to_string(a.id) +
                                  " overlaps another agent");
    }
    if (a.history.size() == 0 || !(a.history.back() == a.pos)) {
      throw std::invalid_argument("agent " + std::to_string(a.id) +
                                  " history tail does not match position");
    }
  }
}

}  // namespace rde
