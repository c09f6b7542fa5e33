/*
 * Simultaneous-move step engine with conflict detection and stay-on-conflict
 * resolution.
 */
#pragma once

#include <vector>

#include "rde/agent.hpp"

namespace rde {

// Every action (Stay included) whose target cell is in bounds and free.
// Throws std::invalid_argument when pos itself is blocked or out of bounds.
std::vector<Action> valid_moves(const GridMap& map, Position pos);

// All pairwise vertex and edge (swap) conflicts between a conflict-free
// current placement and a proposed one. Throws on mismatched sizes.
std::vector<Conflict> detect_conflicts(const std::vector<Position>& current,
                                       const std::vector<Position>& proposed,
                                       int timestep = 0);

struct StepOutcome {
  EpisodeState state;
  std::vector<Conflict> conflicts;  // everything encountered while resolving
};

// Advances all agents by one simultaneous step. Actions whose target is out
// of bounds or an obstacle become Stay, then every agent participating in a
// vertex or edge conflict is reverted to Stay; reverting an agent can block
// agents behind it, so the revert loop runs to a fixpoint (at most one
// iteration per moving agent). Timestep, histories and prev_dir are updated.
StepOutcome resolve_step(const EpisodeState& state,
                         const std::vector<Action>& joint);

// True iff every agent sits on its goal (vacuously true with no agents).
bool is_success(const EpisodeState& state);

}  // namespace rde
