/*
 * The hybrid switcher and the episode runner: per agent per step, classify
 * the scenario, dispatch to the cooperative / heat-map / escape policy, step
 * the engine, record the trace.
 */
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rde/adapter.hpp"
#include "rde/policies.hpp"
#include "rde/scenarios.hpp"
#include "rde/step.hpp"

namespace rde {

enum class ComplexPolicyKind : uint8_t { CoopBaseline, External };
enum class FailureKind : uint8_t { None, Timeout, AdapterFailure };

const char* to_string(FailureKind f);

struct RdeConfig {
  FovSpec fov{};
  int max_timesteps = 150;
  ComplexPolicyKind complex_policy = ComplexPolicyKind::CoopBaseline;
  AdapterConfig adapter{};  // used when complex_policy == External
  bool enable_dhm_policy = true;
  bool enable_escape = true;
  uint64_t seed = 0;
};

struct StepRecord {
  int timestep = 0;                   // timestep after executing the step
  std::vector<Position> positions;    // post-resolution
  std::vector<Action> actions;        // proposed joint action, pre-resolution
  std::vector<PolicySource> sources;
  std::vector<Conflict> conflicts;
};

struct Trace {
  GridMap map;
  std::vector<Position> starts;
  std::vector<Position> goals;
  uint64_t seed = 0;
  std::string arm_label;
  std::vector<StepRecord> steps;

  int num_agents() const { return static_cast<int>(starts.size()); }
};

struct PolicyUsage {
  long cooperative = 0;
  long dhm = 0;
  long escape = 0;

  long total() const { return cooperative + dhm + escape; }
  void add(PolicySource s, long n = 1);
  PolicyUsage& operator+=(const PolicyUsage& o);
};

struct EpisodeResult {
  bool success = false;
  int makespan = 0;                 // steps until success, or the cap
  std::vector<int> agent_path_costs;
  PolicyUsage usage;
  FailureKind failure = FailureKind::None;
  Trace trace;                      // empty steps when tracing is off
};

struct JointDecision {
  std::vector<Action> actions;
  std::vector<PolicySource> sources;
};

// One switching round: classify every agent, route Deadlock to escape,
// Simple to greedy descent, Complex to the cooperative policy. Disabled
// policies fall through (escape to the FOV-appropriate class, greedy descent
// to the cooperative policy), so ablation arms stay well-defined. Agents
// whose goal is unreachable (infinite heat) hold Stay.
JointDecision rde_joint_action(
    const EpisodeState& state, const RdeConfig& cfg,
    const std::vector<std::shared_ptr<const DistanceHeatMap>>& dhms,
    std::vector<RngStream>& rngs, CooperativePolicy& complex_policy);

// Runs one episode to success or the step cap. Fully deterministic given
// (instance, cfg.seed, episode_id) with the built-in cooperative baseline.
// `cache` may be shared across episodes; `complex_override` substitutes the
// complex-scenario policy (otherwise cfg.complex_policy selects it, spawning
// an adapter when External).
EpisodeResult run_episode(const Instance& instance, const RdeConfig& cfg,
                          uint64_t episode_id = 0, DhmCache* cache = nullptr,
                          bool record_trace = true,
                          CooperativePolicy* complex_override = nullptr);

}  // namespace rde
