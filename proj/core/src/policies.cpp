#include "rde/policies.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace rde {

const char* to_string(ScenarioClass c) {
  switch (c) {
    case ScenarioClass::Complex: return "complex";
    case ScenarioClass::Simple: return "simple";
    case ScenarioClass::Deadlock: return "deadlock";
  }
  return "?";
}

const char* to_string(PolicySource s) {
  switch (s) {
    case PolicySource::Cooperative: return "Cooperative";
    case PolicySource::Dhm: return "DHM";
    case PolicySource::Escape: return "Escape";
  }
  return "?";
}

void FovSpec::validate() const {
  if (width <= 0 || height <= 0 || width % 2 == 0 || height % 2 == 0) {
    throw std::invalid_argument("FovSpec: extents must be positive and odd");
  }
}

bool others_in_fov(const EpisodeState& state, int agent_id,
                   const FovSpec& fov) {
  const Position center = state.agents[agent_id].pos;
  const int half_h = (fov.height - 1) / 2;
  const int half_w = (fov.width - 1) / 2;
  for (const auto& other : state.agents) {
    if (other.id == agent_id) continue;
    if (std::abs(other.pos.row - center.row) <= half_h &&
        std::abs(other.pos.col - center.col) <= half_w) {
      return true;
    }
  }
  return false;
}

bool is_deadlocked(const AgentState& agent) {
  if (agent.at_goal() || !agent.history.full()) return false;
  return agent.history.back(1) == agent.history.back(3) &&
         agent.history.back(2) == agent.history.back(4);
}

ScenarioClass classify(const EpisodeState& state, int agent_id,
                       const FovSpec& fov) {
  if (is_deadlocked(state.agents[agent_id])) return ScenarioClass::Deadlock;
  return others_in_fov(state, agent_id, fov) ? ScenarioClass::Complex
                                             : ScenarioClass::Simple;
}

Action dhm_greedy(const DistanceHeatMap& dhm, const AgentState& agent,
                  RngStream& rng) {
  if (agent.at_goal()) return Action::Stay;
  const auto heat_at = [&dhm](Position p) -> uint32_t {
    if (p.row < 0 || p.row >= dhm.height() || p.col < 0 ||
        p.col >= dhm.width()) {
      return DistanceHeatMap::kInfinite;
    }
    return dhm.at(p);
  };
  if (heat_at(agent.pos) == DistanceHeatMap::kInfinite) {
    throw std::runtime_error("dhm_greedy: goal unreachable from agent cell");
  }

  uint32_t best = DistanceHeatMap::kInfinite;
  std::vector<Action> minimal;
  for (Action a : kMoveActions) {
    const uint32_t h = heat_at(apply_action(agent.pos, a));
    if (h < best) {
      best = h;
      minimal.assign(1, a);
    } else if (h == best && h != DistanceHeatMap::kInfinite) {
      minimal.push_back(a);
    }
  }
  // Finite heat guarantees a strictly descending neighbour.
  if (minimal.size() > 1 && agent.prev_dir) {
    const auto straight =
        std::find(minimal.begin(), minimal.end(), *agent.prev_dir);
    if (straight != minimal.end()) return *straight;
  }
  if (minimal.size() == 1) return minimal.front();
  return rng.pick(minimal);
}

Action escape_action(const EpisodeState& state, int agent_id, RngStream& rng) {
  const auto& map = *state.map;
  const Position pos = state.agents[agent_id].pos;
  std::vector<Action> candidates;
  for (Action a : kMoveActions) {
    if (map.is_free(apply_action(pos, a))) candidates.push_back(a);
  }
  if (candidates.empty()) return Action::Stay;
  return rng.pick(candidates);
}

Action coop_baseline(const EpisodeState& state, int agent_id,
                     const DistanceHeatMap& dhm, const FovSpec& fov,
                     RngStream& rng) {
  const auto& map = *state.map;
  const auto& agent = state.agents[agent_id];
  const int half_h = (fov.height - 1) / 2;
  const int half_w = (fov.width - 1) / 2;

  const auto occupied_by_other = [&](Position p) {
    // Only agents the baseline can observe count; every 4-neighbour lies
    // inside any odd window of at least 3x3.
    if (std::abs(p.row - agent.pos.row) > half_h ||
        std::abs(p.col - agent.pos.col) > half_w) {
      return false;
    }
    for (const auto& other : state.agents) {
      if (other.id != agent_id && other.pos == p) return true;
    }
    return false;
  };

  struct Candidate {
    Action action;
    uint32_t heat;
    bool demoted;
  };
  std::vector<Candidate> candidates;
  candidates.push_back({Action::Stay, dhm.at(agent.pos), false});
  for (Action a : kMoveActions) {
    const Position target = apply_action(agent.pos, a);
    if (!map.is_free(target)) continue;
    const uint32_t h = dhm.at(target);
    if (h == DistanceHeatMap::kInfinite) continue;
    candidates.push_back({a, h, occupied_by_other(target)});
  }

  const auto better = [](const Candidate& a, const Candidate& b) {
    if (a.demoted != b.demoted) return !a.demoted;
    return a.heat < b.heat;
  };
  const Candidate* best = &candidates.front();
  for (const auto& c : candidates) {
    if (better(c, *best)) best = &c;
  }
  std::vector<Action> tied;
  for (const auto& c : candidates) {
    if (c.demoted == best->demoted && c.heat == best->heat) {
      tied.push_back(c.action);
    }
  }
  if (tied.size() == 1) return tied.front();
  if (agent.prev_dir) {
    const auto straight = std::find(tied.begin(), tied.end(), *agent.prev_dir);
    if (straight != tied.end()) return *straight;
  }
  return rng.pick(tied);
}

std::vector<Action> CoopBaselinePolicy::decide(
    const EpisodeState& state, const std::vector<int>& agent_ids,
    const std::vector<std::shared_ptr<const DistanceHeatMap>>& dhms,
    const FovSpec& fov, std::vector<RngStream>& rngs) {
  std::vector<Action> out;
  out.reserve(agent_ids.size());
  for (int id : agent_ids) {
    out.push_back(coop_baseline(state, id, *dhms[id], fov, rngs[id]));
  }
  return out;
}

}  // namespace rde
