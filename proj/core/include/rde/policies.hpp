/*
 * Per-agent scenario classification and the three policies the hybrid
 * switcher dispatches to: heat-map greedy descent, random escape, and a
 * rule-based cooperative baseline filling the pluggable complex-scenario
 * slot.
 */
#pragma once

#include <string>
#include <vector>

#include "rde/agent.hpp"
#include "rde/dhm.hpp"
#include "rde/rng.hpp"

namespace rde {

// Deadlock dominates; otherwise the class depends only on FOV occupancy.
enum class ScenarioClass : uint8_t { Complex, Simple, Deadlock };

enum class PolicySource : uint8_t { Cooperative, Dhm, Escape };

const char* to_string(ScenarioClass c);
const char* to_string(PolicySource s);

// Agent-centred observation window; odd extents keep the agent in the middle.
struct FovSpec {
  int width = 9;
  int height = 9;

  void validate() const;  // throws unless both extents are odd and positive
  bool operator==(const FovSpec&) const = default;
};

struct PolicyDecision {
  Action action = Action::Stay;
  PolicySource source = PolicySource::Cooperative;
};

// True iff any other agent lies inside the window centred on this agent
// (the window is clipped at map borders, which cannot admit extra agents).
bool others_in_fov(const EpisodeState& state, int agent_id,
                   const FovSpec& fov);

// Deadlock predicate over the 5-entry history: off goal, history full, and
// the last four entries alternate with period two. Covers both stagnation
// (all entries equal) and single-step oscillation.
bool is_deadlocked(const AgentState& agent);

ScenarioClass classify(const EpisodeState& state, int agent_id,
                       const FovSpec& fov);

// Greedy descent on the heat field. Stay at the goal; otherwise pick the
// move into the free neighbour with minimum heat. Ties prefer the action
// that keeps the agent moving straight; remaining ties are drawn from rng.
// Throws std::runtime_error when the agent's own cell has infinite heat.
Action dhm_greedy(const DistanceHeatMap& dhm, const AgentState& agent,
                  RngStream& rng);

// Uniform draw over the four moves, restricted to in-bounds targets that are
// not static obstacles. Other agents are deliberately not filtered; their
// collisions resolve in the engine. Boxed in on all four sides: Stay.
Action escape_action(const EpisodeState& state, int agent_id, RngStream& rng);

// Rule-based stand-in for a learned cooperative policy. Candidates (the four
// moves plus Stay) are ranked by target heat; candidates targeting a cell
// another FOV agent currently occupies are demoted below every unoccupied
// candidate, which also rules out head-on swaps. Ties break straight-first,
// then by rng.
Action coop_baseline(const EpisodeState& state, int agent_id,
                     const DistanceHeatMap& dhm, const FovSpec& fov,
                     RngStream& rng);

// Complex-scenario policy slot. decide() is called once per step with the
// agents routed to it; dhms and rngs are indexed by agent id.
class CooperativePolicy {
 public:
  virtual ~CooperativePolicy() = default;

  virtual std::vector<Action> decide(
      const EpisodeState& state, const std::vector<int>& agent_ids,
      const std::vector<std::shared_ptr<const DistanceHeatMap>>& dhms,
      const FovSpec& fov, std::vector<RngStream>& rngs) = 0;

  virtual std::string name() const = 0;
};

class CoopBaselinePolicy final : public CooperativePolicy {
 public:
  std::vector<Action> decide(
      const EpisodeState& state, const std::vector<int>& agent_ids,
      const std::vector<std::shared_ptr<const DistanceHeatMap>>& dhms,
      const FovSpec& fov, std::vector<RngStream>& rngs) override;

  std::string name() const override { return "coop_baseline"; }
};

}  // namespace rde
