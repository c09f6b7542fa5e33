#include "rde/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace rde {

std::string arm_label(Arm arm) {
  switch (arm) {
    case Arm::Baseline: return "baseline";
    case Arm::Dhm: return "+DHM";
    case Arm::DhmEscape: return "+DHM+Escape";
  }
  return "?";
}

std::optional<Arm> arm_from_string(const std::string& s) {
  if (s == "baseline") return Arm::Baseline;
  if (s == "dhm" || s == "+DHM") return Arm::Dhm;
  if (s == "dhm-escape" || s == "dhm_escape" || s == "+DHM+Escape") {
    return Arm::DhmEscape;
  }
  return std::nullopt;
}

void apply_arm(RdeConfig& cfg, Arm arm) {
  cfg.enable_dhm_policy = arm != Arm::Baseline;
  cfg.enable_escape = arm == Arm::DhmEscape;
}

void BenchConfig::validate() const {
  if (maps.empty()) throw std::invalid_argument("bench: no map specs");
  if (agent_counts.empty()) throw std::invalid_argument("bench: no agent counts");
  if (arms.empty()) throw std::invalid_argument("bench: no arms");
  if (instances_per_cell < 1) {
    throw std::invalid_argument("bench: instances_per_cell must be >= 1");
  }
  if (max_timesteps < 1) {
    throw std::invalid_argument("bench: max_timesteps must be >= 1");
  }
  if (parallelism < 1) {
    throw std::invalid_argument("bench: parallelism must be >= 1");
  }
  fov.validate();
}

BenchConfig BenchConfig::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open bench config " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path.string() + ": bad JSON: " + e.what());
  }

  BenchConfig cfg;
  if (j.contains("maps")) {
    cfg.maps.clear();
    for (const auto& mj : j.at("maps")) {
      const auto kind_str = mj.at("kind").get<std::string>();
      MapSpec spec = kind_str == "dense" ? MapSpec::dense() : MapSpec::sparse();
      if (kind_str != "dense" && kind_str != "sparse") {
        throw std::runtime_error("bench config: unknown map kind '" +
                                 kind_str + "'");
      }
      spec.width = mj.value("width", spec.width);
      spec.height = mj.value("height", spec.height);
      spec.target_rho_o = mj.value("target_density", spec.target_rho_o);
      spec.seed = mj.value("seed", spec.seed);
      cfg.maps.push_back(spec);
    }
  }
  if (j.contains("agent_counts")) {
    cfg.agent_counts = j.at("agent_counts").get<std::vector<int>>();
  }
  cfg.instances_per_cell = j.value("instances", cfg.instances_per_cell);
  cfg.max_timesteps = j.value("max_timesteps", cfg.max_timesteps);
  if (j.contains("arms")) {
    cfg.arms.clear();
    for (const auto& a : j.at("arms")) {
      const auto arm = arm_from_string(a.get<std::string>());
      if (!arm) {
        throw std::runtime_error("bench config: unknown arm '" +
                                 a.get<std::string>() + "'");
      }
      cfg.arms.push_back(*arm);
    }
  }
  if (j.contains("complex_policy")) {
    const auto p = j.at("complex_policy").get<std::string>();
    if (p == "coop") {
      cfg.complex_policy = ComplexPolicyKind::CoopBaseline;
    } else if (p == "external") {
      cfg.complex_policy = ComplexPolicyKind::External;
    } else {
      throw std::runtime_error("bench config: unknown complex_policy '" + p +
                               "'");
    }
  }
  cfg.adapter.command = j.value("adapter_command", cfg.adapter.command);
  cfg.adapter.timeout_ms = j.value("adapter_timeout_ms", cfg.adapter.timeout_ms);
  cfg.fov.width = j.value("fov_width", cfg.fov.width);
  cfg.fov.height = j.value("fov_height", cfg.fov.height);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.parallelism = j.value("parallelism", cfg.parallelism);
  cfg.validate();
  return cfg;
}

double ssr(long n_s, long n_t) {
  if (n_t == 0) throw std::invalid_argument("ssr: n_t must be positive");
  if (n_s < 0 || n_s > n_t) throw std::invalid_argument("ssr: need 0 <= n_s <= n_t");
  return static_cast<double>(n_s) / static_cast<double>(n_t);
}

BatchResult run_batch(const BenchConfig& cfg) {
  cfg.validate();

  const int n_maps = static_cast<int>(cfg.maps.size());
  const int n_counts = static_cast<int>(cfg.agent_counts.size());
  const int n_arms = static_cast<int>(cfg.arms.size());
  const int n_inst = cfg.instances_per_cell;

  BatchResult result;
  result.config = cfg;
  result.complex_policy_name =
      cfg.complex_policy == ComplexPolicyKind::CoopBaseline ? "coop_baseline"
                                                            : "external";

  std::vector<GridMap> maps;
  maps.reserve(n_maps);
  for (const auto& spec : cfg.maps) maps.push_back(generate_warehouse_map(spec));
  // One heat-map cache per map; goals repeat heavily across instances.
  std::vector<DhmCache> caches(n_maps);

  const int n_cells = n_maps * n_counts * n_arms;
  result.cells.resize(n_cells);
  for (int mi = 0; mi < n_maps; ++mi) {
    for (int ci = 0; ci < n_counts; ++ci) {
      for (int ai = 0; ai < n_arms; ++ai) {
        auto& cell = result.cells[(mi * n_counts + ci) * n_arms + ai];
        cell.kind = cfg.maps[mi].kind;
        cell.agents = cfg.agent_counts[ci];
        cell.arm = cfg.arms[ai];
        cell.episode_success.assign(n_inst, 0);
        cell.episode_makespan.assign(n_inst, 0);
        cell.episode_errors.assign(n_inst, "");
      }
    }
  }

  struct Job {
    int cell = 0;
    int map_index = 0;
    int count_index = 0;
    int arm_index = 0;
    int instance_index = 0;
  };
  std::vector<Job> jobs;
  jobs.reserve(static_cast<size_t>(n_cells) * n_inst);
  for (int mi = 0; mi < n_maps; ++mi) {
    for (int ci = 0; ci < n_counts; ++ci) {
      for (int ai = 0; ai < n_arms; ++ai) {
        for (int ii = 0; ii < n_inst; ++ii) {
          jobs.push_back({(mi * n_counts + ci) * n_arms + ai, mi, ci, ai, ii});
        }
      }
    }
  }

  // Failure kinds logged per episode; reduced after the join so the reduce
  // order never depends on worker scheduling.
  std::vector<uint8_t> episode_failure(jobs.size(), 0);  // FailureKind value
  std::vector<PolicyUsage> episode_usage(jobs.size());
  std::vector<double> episode_wall(jobs.size(), 0.0);

  std::atomic<size_t> next_job{0};
  const auto worker = [&]() {
    for (;;) {
      const size_t idx = next_job.fetch_add(1);
      if (idx >= jobs.size()) return;
      const Job& job = jobs[idx];
      auto& cell = result.cells[job.cell];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        // Instance seeds ignore the arm: every arm replays the same
        // instances, so arm deltas are paired comparisons.
        const uint64_t instance_seed =
            mix_seed(cfg.seed, 0xB0D5 + static_cast<uint64_t>(job.map_index),
                     (static_cast<uint64_t>(job.count_index) << 32) |
                         static_cast<uint64_t>(job.instance_index));
        const Instance instance =
            generate_instance(maps[job.map_index],
                              cfg.agent_counts[job.count_index], instance_seed);

        RdeConfig rcfg;
        rcfg.fov = cfg.fov;
        rcfg.max_timesteps = cfg.max_timesteps;
        rcfg.complex_policy = cfg.complex_policy;
        rcfg.adapter = cfg.adapter;
        rcfg.seed = cfg.seed;
        apply_arm(rcfg, cfg.arms[job.arm_index]);

        const uint64_t episode_id =
            ((static_cast<uint64_t>(job.map_index) * n_counts +
              job.count_index) *
                 n_arms +
             job.arm_index) *
                static_cast<uint64_t>(n_inst) +
            job.instance_index;

        const EpisodeResult er =
            run_episode(instance, rcfg, episode_id, &caches[job.map_index],
                        /*record_trace=*/false);
        cell.episode_success[job.instance_index] = er.success ? 1 : 0;
        cell.episode_makespan[job.instance_index] = er.makespan;
        episode_failure[idx] = static_cast<uint8_t>(er.failure);
        episode_usage[idx] = er.usage;
      } catch (const std::exception& e) {
        cell.episode_errors[job.instance_index] = e.what();
      }
      episode_wall[idx] = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - t0)
                              .count();
    }
  };

  const int workers = std::min<int>(cfg.parallelism,
                                    static_cast<int>(jobs.size()) + 1);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (size_t idx = 0; idx < jobs.size(); ++idx) {
    const Job& job = jobs[idx];
    auto& cell = result.cells[job.cell];
    cell.wall_ms += episode_wall[idx];
    if (!cell.episode_errors[job.instance_index].empty()) {
      ++cell.errors;
      continue;
    }
    const auto failure = static_cast<FailureKind>(episode_failure[idx]);
    if (failure == FailureKind::AdapterFailure) {
      ++cell.adapter_failures;
      continue;
    }
    ++cell.n_t;
    cell.usage += episode_usage[idx];
    if (cell.episode_success[job.instance_index]) ++cell.n_s;
  }
  for (auto& cell : result.cells) {
    cell.ssr_value = cell.n_t > 0 ? ssr(cell.n_s, cell.n_t)
                                  : std::numeric_limits<double>::quiet_NaN();
    if (cell.n_s > 0) {
      long sum = 0;
      for (int ii = 0; ii < n_inst; ++ii) {
        if (cell.episode_success[ii]) sum += cell.episode_makespan[ii];
      }
      cell.mean_makespan_success = static_cast<double>(sum) / cell.n_s;
    } else {
      cell.mean_makespan_success = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return result;
}

void write_results_csv(const BatchResult& result, std::ostream& out) {
  out << "map_kind,agents,arm,n_s,n_t,ssr,mean_makespan,adapter_failures,"
         "complex_policy\n";
  char buf[64];
  for (const auto& cell : result.cells) {
    out << to_string(cell.kind) << ',' << cell.agents << ','
        << arm_label(cell.arm) << ',' << cell.n_s << ',' << cell.n_t << ',';
    if (cell.n_t > 0) {
      std::snprintf(buf, sizeof(buf), "%.6f", cell.ssr_value);
      out << buf;
    }
    out << ',';
    if (cell.n_s > 0) {
      std::snprintf(buf, sizeof(buf), "%.3f", cell.mean_makespan_success);
      out << buf;
    }
    out << ',' << cell.adapter_failures << ',' << result.complex_policy_name
        << '\n';
  }
}

void write_results_csv(const BatchResult& result,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV " + path.string());
  write_results_csv(result, out);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string results_csv_string(const BatchResult& result) {
  std::ostringstream os;
  write_results_csv(result, os);
  return os.str();
}

}  // namespace rde
