/*
 * Batch experiment runner: map kind x agent count x policy arm cells, each
 * with its own stream of seeded instances, reduced to success-rate rows.
 */
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rde/episode.hpp"

namespace rde {

enum class Arm : uint8_t { Baseline, Dhm, DhmEscape };

// Labels mirror the ablation structure: the cooperative policy alone, plus
// the heat-map policy, plus the escape policy.
std::string arm_label(Arm arm);
std::optional<Arm> arm_from_string(const std::string& s);
void apply_arm(RdeConfig& cfg, Arm arm);

struct BenchConfig {
  std::vector<MapSpec> maps{MapSpec::sparse(), MapSpec::dense()};
  std::vector<int> agent_counts{10, 30, 50, 70};
  int instances_per_cell = 1000;
  int max_timesteps = 150;
  std::vector<Arm> arms{Arm::Baseline, Arm::Dhm, Arm::DhmEscape};
  ComplexPolicyKind complex_policy = ComplexPolicyKind::CoopBaseline;
  AdapterConfig adapter{};
  FovSpec fov{};
  uint64_t seed = 1;
  int parallelism = 1;

  void validate() const;
  static BenchConfig from_json_file(const std::filesystem::path& path);
};

// Success rate n_s / n_t. Throws std::invalid_argument when n_t == 0.
double ssr(long n_s, long n_t);

struct CellResult {
  MapKind kind = MapKind::Sparse;
  int agents = 0;
  Arm arm = Arm::Baseline;

  long n_s = 0;
  long n_t = 0;                 // adapter failures and errors excluded
  long adapter_failures = 0;
  long errors = 0;              // episodes that threw; messages kept below
  double ssr_value = 0.0;
  double mean_makespan_success = 0.0;  // NaN when n_s == 0
  PolicyUsage usage;
  double wall_ms = 0.0;

  std::vector<uint8_t> episode_success;  // per-instance log, index = instance
  std::vector<int> episode_makespan;
  std::vector<std::string> episode_errors;
};

struct BatchResult {
  BenchConfig config;
  std::vector<CellResult> cells;  // map order x count order x arm order
  std::string complex_policy_name;
};

// Runs every cell; per-episode seeds derive from cell and instance indices,
// so the worker count never changes the outcome. Instance sampling ignores
// the arm: all arms of a cell see the same instances.
BatchResult run_batch(const BenchConfig& cfg);

// CSV rows, one per cell: map_kind, agents, arm, n_s, n_t, ssr,
// mean_makespan, then adapter_failures and complex_policy. Byte-stable for
// identical results.
void write_results_csv(const BatchResult& result, std::ostream& out);
void write_results_csv(const BatchResult& result,
                       const std::filesystem::path& path);
std::string results_csv_string(const BatchResult& result);

enum class RenderMode : uint8_t { Ascii, Svg };

// Purely presentational re-rendering of a recorded trace: one frame per
// timestep (the start placement included). Ascii frames are text grids;
// Svg frames are standalone files.
std::vector<std::string> render_trace_frames(const Trace& trace,
                                             RenderMode mode);

}  // namespace rde
