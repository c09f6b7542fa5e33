#include "rde/step.hpp"

#include <stdexcept>

namespace rde {

std::vector<Action> valid_moves(const GridMap& map, Position pos) {
  if (!map.is_free(pos)) {
    throw std::invalid_argument("valid_moves: position is blocked or outside");
  }
  std::vector<Action> out{Action::Stay};
  for (Action a : kMoveActions) {
    if (map.is_free(apply_action(pos, a))) out.push_back(a);
  }
  return out;
}

std::vector<Conflict> detect_conflicts(const std::vector<Position>& current,
                                       const std::vector<Position>& proposed,
                                       int timestep) {
  if (current.size() != proposed.size()) {
    throw std::invalid_argument("detect_conflicts: agent sets differ");
  }
  const int m = static_cast<int>(current.size());
  std::vector<Conflict> out;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (proposed[i] == proposed[j]) {
        out.push_back({Conflict::Kind::Vertex, i, j, proposed[i], proposed[i],
                       timestep});
      } else if (proposed[i] == current[j] && proposed[j] == current[i]) {
        out.push_back({Conflict::Kind::Edge, i, j, current[i], current[j],
                       timestep});
      }
    }
  }
  return out;
}

StepOutcome resolve_step(const EpisodeState& state,
                         const std::vector<Action>& joint) {
  const auto& map = *state.map;
  const int m = static_cast<int>(state.agents.size());
  if (static_cast<int>(joint.size()) != m) {
    throw std::invalid_argument("resolve_step: one action per agent required");
  }

  const std::vector<Position> current = state.positions();
  std::vector<Position> proposed(m);
  for (int i = 0; i < m; ++i) {
    const Position target = apply_action(current[i], joint[i]);
    proposed[i] = map.is_free(target) ? target : current[i];
  }

  // Revert conflict participants to Stay until no agent moves into trouble.
  // A reverted agent re-occupies its cell, which can newly conflict with
  // agents heading there, so iterate; each round stops at least one mover.
  std::vector<Conflict> encountered;
  for (;;) {
    const auto conflicts =
        detect_conflicts(current, proposed, state.timestep + 1);
    bool any_reverted = false;
    for (const auto& c : conflicts) {
      for (int agent : {c.agent_i, c.agent_j}) {
        if (!(proposed[agent] == current[agent])) {
          proposed[agent] = current[agent];
          any_reverted = true;
        }
      }
    }
    encountered.insert(encountered.end(), conflicts.begin(), conflicts.end());
    if (!any_reverted) break;
  }

  StepOutcome out{state, std::move(encountered)};
  out.state.timestep = state.timestep + 1;
  for (int i = 0; i < m; ++i) {
    auto& agent = out.state.agents[i];
    agent.prev_dir = direction_between(current[i], proposed[i]);
    agent.pos = proposed[i];
    agent.history.push(proposed[i]);
  }
  return out;
}

bool is_success(const EpisodeState& state) {
  for (const auto& a : state.agents) {
    if (!a.at_goal()) return false;
  }
  return true;
}

}  // namespace rde
