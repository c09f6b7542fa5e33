#include "rde/adapter.hpp"

#include <algorithm>
#include <csignal>
#include <cstring>
#include <iostream>
#include <mutex>

#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace rde {

namespace {

using nlohmann::json;

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { std::signal(SIGPIPE, SIG_IGN); });
}

int64_t now_ms() {
  struct timespec ts;
  clock_gettime(CLOCK_MONOTONIC, &ts);
  return static_cast<int64_t>(ts.tv_sec) * 1000 + ts.tv_nsec / 1000000;
}

}  // namespace

ObservationRecord make_observation(const EpisodeState& state, int agent_id,
                                   const DistanceHeatMap& dhm,
                                   const FovSpec& fov) {
  const auto& map = *state.map;
  const Position center = state.agents[agent_id].pos;
  const int half_h = (fov.height - 1) / 2;
  const int half_w = (fov.width - 1) / 2;

  ObservationRecord obs;
  obs.agent_id = agent_id;
  obs.timestep = state.timestep;
  obs.fov_obstacles.assign(fov.height, std::vector<int>(fov.width, 1));
  obs.fov_agents.assign(fov.height, std::vector<int>(fov.width, 0));
  obs.fov_heat.assign(fov.height, std::vector<int>(fov.width, -1));

  for (int r = 0; r < fov.height; ++r) {
    for (int c = 0; c < fov.width; ++c) {
      const Position p{center.row + r - half_h, center.col + c - half_w};
      if (!map.in_bounds(p)) continue;
      obs.fov_obstacles[r][c] = map.is_obstacle(p) ? 1 : 0;
      const uint32_t h = dhm.at(p);
      if (h != DistanceHeatMap::kInfinite) {
        obs.fov_heat[r][c] = static_cast<int>(h);
      }
    }
  }
  for (const auto& other : state.agents) {
    if (other.id == agent_id) continue;
    const int r = other.pos.row - center.row + half_h;
    const int c = other.pos.col - center.col + half_w;
    if (r >= 0 && r < fov.height && c >= 0 && c < fov.width) {
      obs.fov_agents[r][c] = 1;
    }
  }
  return obs;
}

ExternalPolicyAdapter::ExternalPolicyAdapter(AdapterConfig cfg)
    : cfg_(std::move(cfg)) {}

ExternalPolicyAdapter::~ExternalPolicyAdapter() { shutdown(); }

void ExternalPolicyAdapter::start(const GridMap& map, const FovSpec& fov) {
  if (cfg_.command.empty()) throw AdapterError("adapter command is empty");
  ignore_sigpipe_once();

  int to_child[2];    // engine writes, child reads
  int from_child[2];  // child writes, engine reads
  if (pipe(to_child) != 0 || pipe(from_child) != 0) {
    throw AdapterError("pipe() failed");
  }

  const int pid = fork();
  if (pid < 0) throw AdapterError("fork() failed");
  if (pid == 0) {
    dup2(to_child[0], STDIN_FILENO);
    dup2(from_child[1], STDOUT_FILENO);
    close(to_child[0]);
    close(to_child[1]);
    close(from_child[0]);
    close(from_child[1]);
    execl("/bin/sh", "sh", "-c", cfg_.command.c_str(),
          static_cast<char*>(nullptr));
    _exit(127);
  }

  pid_ = pid;
  to_child_ = to_child[1];
  from_child_ = from_child[0];
  close(to_child[0]);
  close(from_child[1]);

  json hello{{"type", "handshake"},
             {"protocol_version", kProtocolVersion},
             {"fov_w", fov.width},
             {"fov_h", fov.height},
             {"map_w", map.width()},
             {"map_h", map.height()}};
  send_line(hello.dump());

  std::string reply;
  if (!read_line(reply, cfg_.timeout_ms)) {
    shutdown();
    throw AdapterError("handshake: no reply from adapter");
  }
  json ack;
  try {
    ack = json::parse(reply);
  } catch (const json::exception&) {
    shutdown();
    throw AdapterError("handshake: malformed reply");
  }
  if (ack.value("type", "") != "handshake_ack") {
    shutdown();
    throw AdapterError("handshake: expected handshake_ack");
  }
  const int version = ack.value("protocol_version", -1);
  if (version != kProtocolVersion) {
    shutdown();
    throw AdapterError("handshake: protocol version mismatch (adapter " +
                       std::to_string(version) + ", engine " +
                       std::to_string(kProtocolVersion) + ")");
  }
}

std::vector<Action> ExternalPolicyAdapter::decide(
    const EpisodeState& state, const std::vector<int>& agent_ids,
    const std::vector<std::shared_ptr<const DistanceHeatMap>>& dhms,
    const FovSpec& fov, std::vector<RngStream>& rngs) {
  (void)rngs;
  if (agent_ids.empty()) return {};
  if (!running()) throw AdapterError("adapter process is not running");

  const int k = static_cast<int>(agent_ids.size());
  std::string batch;
  batch += json{{"type", "step"},
                {"timestep", state.timestep},
                {"num_agents", k}}
               .dump();
  batch += "\n";
  for (int id : agent_ids) {
    const auto obs = make_observation(state, id, *dhms[id], fov);
    json j{{"type", "obs"},
           {"agent_id", obs.agent_id},
           {"timestep", obs.timestep},
           {"fov_obstacles", obs.fov_obstacles},
           {"fov_agents", obs.fov_agents},
           {"fov_heat", obs.fov_heat}};
    batch += j.dump();
    batch += "\n";
  }
  send_line(batch);  // already newline-terminated per record

  // One reply line per observation. Malformed lines burn their slot and the
  // unanswered agents fall back to Stay.
  std::vector<Action> actions(k, Action::Stay);
  std::vector<uint8_t> replied(k, 0);
  const int64_t deadline = now_ms() + cfg_.timeout_ms;
  for (int received = 0; received < k; ++received) {
    const int remaining = static_cast<int>(deadline - now_ms());
    std::string line;
    if (remaining < 0 || !read_line(line, remaining)) {
      throw AdapterError("step " + std::to_string(state.timestep) +
                         ": adapter reply timeout or process exited");
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      std::cerr << "[adapter] warning: malformed reply line, using Stay\n";
      continue;
    }
    if (j.value("type", "") != "action") {
      std::cerr << "[adapter] warning: unexpected record type, using Stay\n";
      continue;
    }
    const int agent_id = j.value("agent_id", -1);
    const auto it = std::find(agent_ids.begin(), agent_ids.end(), agent_id);
    if (it == agent_ids.end()) {
      std::cerr << "[adapter] warning: reply for unknown agent " << agent_id
                << ", using Stay\n";
      continue;
    }
    const size_t slot = it - agent_ids.begin();
    if (replied[slot]) {
      std::cerr << "[adapter] warning: duplicate reply for agent " << agent_id
                << "\n";
      continue;
    }
    const auto action_str = j.value("action", "");
    const auto action =
        action_str.size() == 1 ? action_from_char(action_str[0]) : std::nullopt;
    if (!action) {
      std::cerr << "[adapter] warning: bad action for agent " << agent_id
                << ", using Stay\n";
      replied[slot] = 1;
      continue;
    }
    actions[slot] = *action;
    replied[slot] = 1;
  }
  return actions;
}

void ExternalPolicyAdapter::send_line(const std::string& line) {
  std::string payload = line;
  if (payload.empty() || payload.back() != '\n') payload += '\n';
  size_t off = 0;
  while (off < payload.size()) {
    const ssize_t n =
        write(to_child_, payload.data() + off, payload.size() - off);
    if (n <= 0) {
      throw AdapterError("adapter stdin closed (process exited?)");
    }
    off += static_cast<size_t>(n);
  }
}

bool ExternalPolicyAdapter::read_line(std::string& out, int timeout_ms) {
  const int64_t deadline = now_ms() + std::max(timeout_ms, 0);
  for (;;) {
    const auto nl = rx_buffer_.find('\n');
    if (nl != std::string::npos) {
      out = rx_buffer_.substr(0, nl);
      rx_buffer_.erase(0, nl + 1);
      return true;
    }
    const int remaining = static_cast<int>(deadline - now_ms());
    if (remaining <= 0) return false;

    struct pollfd pfd{from_child_, POLLIN, 0};
    const int rc = poll(&pfd, 1, remaining);
    if (rc <= 0) return false;  // timeout or poll error
    char chunk[4096];
    const ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n <= 0) return false;  // EOF: child exited
    rx_buffer_.append(chunk, static_cast<size_t>(n));
  }
}

void ExternalPolicyAdapter::shutdown() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    kill(pid_, SIGTERM);
    int status = 0;
    for (int i = 0; i < 20; ++i) {
      if (waitpid(pid_, &status, WNOHANG) == pid_) {
        pid_ = -1;
        return;
      }
      usleep(10000);
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

}  // namespace rde
