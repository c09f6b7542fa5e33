#include "rde/episode.hpp"

#include <stdexcept>

namespace rde {

const char* to_string(FailureKind f) {
  switch (f) {
    case FailureKind::None: return "none";
    case FailureKind::Timeout: return "timeout";
    case FailureKind::AdapterFailure: return "adapter_failure";
  }
  return "?";
}

void PolicyUsage::add(PolicySource s, long n) {
  switch (s) {
    case PolicySource::Cooperative: cooperative += n; break;
    case PolicySource::Dhm: dhm += n; break;
    case PolicySource::Escape: escape += n; break;
  }
}

PolicyUsage& PolicyUsage::operator+=(const PolicyUsage& o) {
  cooperative += o.cooperative;
  dhm += o.dhm;
  escape += o.escape;
  return *this;
}

JointDecision rde_joint_action(
    const EpisodeState& state, const RdeConfig& cfg,
    const std::vector<std::shared_ptr<const DistanceHeatMap>>& dhms,
    std::vector<RngStream>& rngs, CooperativePolicy& complex_policy) {
  const int m = static_cast<int>(state.agents.size());
  JointDecision jd;
  jd.actions.assign(m, Action::Stay);
  jd.sources.assign(m, PolicySource::Cooperative);

  std::vector<int> complex_ids;
  for (int i = 0; i < m; ++i) {
    const auto& agent = state.agents[i];
    if (cfg.enable_escape && is_deadlocked(agent)) {
      jd.actions[i] = escape_action(state, i, rngs[i]);
      jd.sources[i] = PolicySource::Escape;
      continue;
    }
    // Deadlocked agents with escape disabled fall through to the class the
    // FOV alone would give them, so ablation arms stay well-defined.
    if (!others_in_fov(state, i, cfg.fov) && cfg.enable_dhm_policy) {
      jd.sources[i] = PolicySource::Dhm;
      if (dhms[i]->finite_at(agent.pos)) {
        jd.actions[i] = dhm_greedy(*dhms[i], agent, rngs[i]);
      } else {
        jd.actions[i] = Action::Stay;  // unreachable goal, hold position
      }
      continue;
    }
    complex_ids.push_back(i);
  }

  if (!complex_ids.empty()) {
    const auto actions =
        complex_policy.decide(state, complex_ids, dhms, cfg.fov, rngs);
    if (actions.size() != complex_ids.size()) {
      throw std::logic_error("complex policy returned wrong action count");
    }
    for (size_t k = 0; k < complex_ids.size(); ++k) {
      jd.actions[complex_ids[k]] = actions[k];
    }
  }
  return jd;
}

EpisodeResult run_episode(const Instance& instance, const RdeConfig& cfg,
                          uint64_t episode_id, DhmCache* cache,
                          bool record_trace,
                          CooperativePolicy* complex_override) {
  cfg.fov.validate();
  if (cfg.max_timesteps < 1) {
    throw std::invalid_argument("run_episode: max_timesteps must be >= 1");
  }

  auto map = std::make_shared<const GridMap>(instance.map);
  EpisodeState state =
      EpisodeState::initial(map, instance.starts, instance.goals);
  const int m = static_cast<int>(state.agents.size());

  DhmCache local_cache;
  DhmCache& dhm_cache = cache ? *cache : local_cache;
  std::vector<std::shared_ptr<const DistanceHeatMap>> dhms;
  dhms.reserve(m);
  for (const auto& goal : instance.goals) {
    dhms.push_back(dhm_cache.get_or_compute(*map, goal));
  }

  std::vector<RngStream> rngs;
  rngs.reserve(m);
  for (int i = 0; i < m; ++i) {
    rngs.push_back(RngStream::derive(cfg.seed, episode_id,
                                     static_cast<uint64_t>(i)));
  }

  EpisodeResult result;
  if (record_trace) {
    result.trace.map = instance.map;
    result.trace.starts = instance.starts;
    result.trace.goals = instance.goals;
    result.trace.seed = cfg.seed;
  }

  std::unique_ptr<CooperativePolicy> owned;
  CooperativePolicy* complex = complex_override;
  if (!complex) {
    if (cfg.complex_policy == ComplexPolicyKind::CoopBaseline) {
      owned = std::make_unique<CoopBaselinePolicy>();
    } else {
      auto adapter = std::make_unique<ExternalPolicyAdapter>(cfg.adapter);
      try {
        adapter->start(*map, cfg.fov);
      } catch (const AdapterError&) {
        result.failure = FailureKind::AdapterFailure;
        result.makespan = cfg.max_timesteps;
        result.agent_path_costs.assign(m, cfg.max_timesteps);
        return result;
      }
      owned = std::move(adapter);
    }
    complex = owned.get();
  }

  std::vector<int> last_off_goal(m, -1);
  for (int i = 0; i < m; ++i) {
    if (!state.agents[i].at_goal()) last_off_goal[i] = 0;
  }

  while (!is_success(state) && state.timestep < cfg.max_timesteps) {
    JointDecision jd;
    try {
      jd = rde_joint_action(state, cfg, dhms, rngs, *complex);
    } catch (const AdapterError&) {
      result.failure = FailureKind::AdapterFailure;
      break;
    }
    auto outcome = resolve_step(state, jd.actions);
    state = std::move(outcome.state);
    for (PolicySource s : jd.sources) result.usage.add(s);
    for (int i = 0; i < m; ++i) {
      if (!state.agents[i].at_goal()) last_off_goal[i] = state.timestep;
    }
    if (record_trace) {
      result.trace.steps.push_back({state.timestep, state.positions(),
                                    std::move(jd.actions),
                                    std::move(jd.sources),
                                    std::move(outcome.conflicts)});
    }
  }

  if (result.failure != FailureKind::AdapterFailure) {
    result.success = is_success(state);
    result.failure = result.success ? FailureKind::None : FailureKind::Timeout;
  }
  result.makespan = result.success ? state.timestep : cfg.max_timesteps;
  result.agent_path_costs.resize(m);
  for (int i = 0; i < m; ++i) {
    result.agent_path_costs[i] = state.agents[i].at_goal()
                                     ? last_off_goal[i] + 1
                                     : cfg.max_timesteps;
  }
  return result;
}

}  // namespace rde
