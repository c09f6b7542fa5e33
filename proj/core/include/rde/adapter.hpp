/*
 * External-policy adapter: drives a child policy process over its standard
 * input/output with newline-delimited JSON records. Wire format lives in
 * protocol.md.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "rde/policies.hpp"

namespace rde {

// Handshake mismatch, per-step timeout, or the child dying mid-episode.
class AdapterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AdapterConfig {
  std::string command;   // launched through /bin/sh -c
  int timeout_ms = 1000; // budget per handshake and per step exchange
};

// One agent's observation for one step: three FOV patches plus identity.
struct ObservationRecord {
  int agent_id = 0;
  int timestep = 0;
  std::vector<std::vector<int>> fov_obstacles;  // 1 = blocked or off-map
  std::vector<std::vector<int>> fov_agents;     // 1 = another agent's cell
  std::vector<std::vector<int>> fov_heat;       // goal distance; -1 = infinite/off-map
};

ObservationRecord make_observation(const EpisodeState& state, int agent_id,
                                   const DistanceHeatMap& dhm,
                                   const FovSpec& fov);

class ExternalPolicyAdapter final : public CooperativePolicy {
 public:
  static constexpr int kProtocolVersion = 1;

  explicit ExternalPolicyAdapter(AdapterConfig cfg);
  ~ExternalPolicyAdapter() override;

  ExternalPolicyAdapter(const ExternalPolicyAdapter&) = delete;
  ExternalPolicyAdapter& operator=(const ExternalPolicyAdapter&) = delete;

  // Spawns the child and completes the handshake. Throws AdapterError.
  void start(const GridMap& map, const FovSpec& fov);

  bool running() const { return pid_ > 0; }

  // Sends one observation record per routed agent, reads one reply line per
  // record. Malformed replies fall back to Stay with a warning on stderr;
  // a timeout or a dead child throws AdapterError.
  std::vector<Action> decide(
      const EpisodeState& state, const std::vector<int>& agent_ids,
      const std::vector<std::shared_ptr<const DistanceHeatMap>>& dhms,
      const FovSpec& fov, std::vector<RngStream>& rngs) override;

  std::string name() const override { return "external"; }

 private:
  void send_line(const std::string& line);
  // One full line within the deadline; empty optional on timeout/EOF.
  bool read_line(std::string& out, int timeout_ms);
  void shutdown();

  AdapterConfig cfg_;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string rx_buffer_;
};

}  // namespace rde
