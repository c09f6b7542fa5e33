/*
 * Command-line front end: map/instance generation, single episodes with
 * trace capture, batch experiments with CSV output, and trace rendering.
 */
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rde/bench.hpp"
#include "rde/trace.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_gen_map(const std::string& kind, int width, int height,
                double density_override, uint64_t seed,
                const std::string& out) {
  rde::MapSpec spec =
      kind == "dense" ? rde::MapSpec::dense(seed) : rde::MapSpec::sparse(seed);
  spec.width = width;
  spec.height = height;
  if (density_override > 0.0) spec.target_rho_o = density_override;
  const rde::GridMap map = rde::generate_warehouse_map(spec);
  rde::write_map(map, out);
  std::printf("wrote %s: %dx%d %s rho_o=%.4f free=%d\n", out.c_str(),
              map.width(), map.height(), rde::to_string(spec.kind),
              map.obstacle_density(), map.free_count());
  return 0;
}

int cmd_gen_instances(const std::string& map_path, int agents, int count,
                      uint64_t seed, const std::string& out_prefix) {
  const rde::GridMap map = rde::read_map(map_path);
  for (int i = 0; i < count; ++i) {
    const rde::Instance inst =
        rde::generate_instance(map, agents, rde::mix_seed(seed, i));
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%04d.inst", out_prefix.c_str(), i);
    rde::write_instance(inst, name, map_path);
    std::printf("wrote %s (%d agents)\n", name, agents);
  }
  return 0;
}

int cmd_run(const std::string& instance_path, const std::string& arm_name,
            uint64_t seed, int max_steps, int fov, const std::string& trace_out,
            const std::string& complex_policy, const std::string& adapter_cmd,
            int adapter_timeout_ms) {
  const rde::Instance instance = rde::read_instance(instance_path);

  rde::RdeConfig cfg;
  cfg.seed = seed;
  cfg.max_timesteps = max_steps;
  cfg.fov = {fov, fov};
  const auto arm = rde::arm_from_string(arm_name);
  if (!arm) {
    std::cerr << "unknown arm '" << arm_name << "'\n";
    return 2;
  }
  rde::apply_arm(cfg, *arm);
  if (complex_policy == "external") {
    cfg.complex_policy = rde::ComplexPolicyKind::External;
    cfg.adapter.command = adapter_cmd;
    cfg.adapter.timeout_ms = adapter_timeout_ms;
  }

  const bool want_trace = !trace_out.empty();
  rde::EpisodeResult result =
      rde::run_episode(instance, cfg, /*episode_id=*/0, nullptr, want_trace);
  if (want_trace) {
    result.trace.arm_label = rde::arm_label(*arm);
    rde::write_trace(result.trace, &result, trace_out);
  }

  std::printf(
      "{\"success\":%s,\"makespan\":%d,\"failure\":\"%s\","
      "\"usage\":{\"cooperative\":%ld,\"dhm\":%ld,\"escape\":%ld}}\n",
      result.success ? "true" : "false", result.makespan,
      rde::to_string(result.failure), result.usage.cooperative,
      result.usage.dhm, result.usage.escape);
  return result.failure == rde::FailureKind::AdapterFailure ? 3 : 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_csv,
              int instances_override, int parallelism_override) {
  rde::BenchConfig cfg = config_path.empty()
                             ? rde::BenchConfig{}
                             : rde::BenchConfig::from_json_file(config_path);
  if (instances_override > 0) cfg.instances_per_cell = instances_override;
  if (parallelism_override > 0) cfg.parallelism = parallelism_override;

  const rde::BatchResult result = rde::run_batch(cfg);
  rde::write_results_csv(result, out_csv);

  for (const auto& cell : result.cells) {
    std::printf("%-6s m=%-3d %-12s n_s=%-5ld n_t=%-5ld ssr=%.3f wall=%.0fms\n",
                rde::to_string(cell.kind), cell.agents,
                rde::arm_label(cell.arm).c_str(), cell.n_s, cell.n_t,
                cell.n_t > 0 ? cell.ssr_value : 0.0, cell.wall_ms);
  }
  std::printf("wrote %s\n", out_csv.c_str());
  return 0;
}

int cmd_render(const std::string& trace_path, const std::string& mode,
               const std::string& out_dir) {
  const rde::TraceFile tf = rde::read_trace(trace_path);
  if (mode == "ascii") {
    for (const auto& frame :
         rde::render_trace_frames(tf.trace, rde::RenderMode::Ascii)) {
      std::cout << frame << "\n";
    }
    return 0;
  }
  const auto frames =
      rde::render_trace_frames(tf.trace, rde::RenderMode::Svg);
  fs::create_directories(out_dir);
  for (size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%05zu.svg", i);
    std::ofstream out(fs::path(out_dir) / name);
    out << frames[i];
  }
  std::printf("wrote %zu frames to %s\n", frames.size(), out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rde: hybrid-policy grid MAPF engine and benchmark harness"};
  app.require_subcommand(1);

  // gen-map
  std::string gm_kind = "sparse", gm_out = "map.map";
  int gm_width = 34, gm_height = 34;
  double gm_density = -1.0;
  uint64_t gm_seed = 0;
  auto* gen_map = app.add_subcommand("gen-map", "Generate a warehouse map");
  gen_map->add_option("--kind", gm_kind, "sparse|dense")
      ->check(CLI::IsMember({"sparse", "dense"}));
  gen_map->add_option("--width", gm_width);
  gen_map->add_option("--height", gm_height);
  gen_map->add_option("--density", gm_density,
                      "override the kind's target obstacle density");
  gen_map->add_option("--seed", gm_seed);
  gen_map->add_option("--out", gm_out)->required();

  // gen-instances
  std::string gi_map, gi_prefix = "instance";
  int gi_agents = 10, gi_count = 1;
  uint64_t gi_seed = 0;
  auto* gen_inst =
      app.add_subcommand("gen-instances", "Sample start/goal instances");
  gen_inst->add_option("--map", gi_map)->required()->check(CLI::ExistingFile);
  gen_inst->add_option("--agents", gi_agents)->required();
  gen_inst->add_option("--count", gi_count);
  gen_inst->add_option("--seed", gi_seed);
  gen_inst->add_option("--out-prefix", gi_prefix);

  // run
  std::string r_instance, r_arm = "dhm-escape", r_trace, r_complex = "coop",
              r_adapter_cmd;
  uint64_t r_seed = 0;
  int r_max = 150, r_fov = 9, r_adapter_timeout = 1000;
  auto* run = app.add_subcommand("run", "Run a single episode");
  run->add_option("--instance", r_instance)->required()->check(CLI::ExistingFile);
  run->add_option("--arm", r_arm, "baseline|dhm|dhm-escape");
  run->add_option("--seed", r_seed);
  run->add_option("--max-steps", r_max);
  run->add_option("--fov", r_fov, "odd FOV extent (square window)");
  run->add_option("--trace-out", r_trace);
  run->add_option("--complex-policy", r_complex, "coop|external")
      ->check(CLI::IsMember({"coop", "external"}));
  run->add_option("--adapter-cmd", r_adapter_cmd,
                  "policy adapter command (external only)");
  run->add_option("--adapter-timeout-ms", r_adapter_timeout);

  // bench
  std::string b_config, b_out = "results.csv";
  int b_instances = 100, b_parallelism = 0;
  auto* bench = app.add_subcommand("bench", "Run a batch experiment");
  bench->add_option("--config", b_config, "JSON config (defaults if omitted)")
      ->check(CLI::ExistingFile);
  bench->add_option("--out", b_out);
  bench->add_option("--instances", b_instances,
                    "instances per cell (0 = keep config value)");
  bench->add_option("--parallelism", b_parallelism,
                    "worker threads (0 = keep config value)");

  // render
  std::string rd_trace, rd_mode = "ascii", rd_out = "frames";
  auto* render = app.add_subcommand("render", "Render a recorded trace");
  render->add_option("--trace", rd_trace)->required()->check(CLI::ExistingFile);
  render->add_option("--mode", rd_mode)->check(CLI::IsMember({"ascii", "svg"}));
  render->add_option("--out", rd_out, "output directory (svg mode)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_map->parsed()) {
      return cmd_gen_map(gm_kind, gm_width, gm_height, gm_density, gm_seed,
                         gm_out);
    }
    if (gen_inst->parsed()) {
      return cmd_gen_instances(gi_map, gi_agents, gi_count, gi_seed, gi_prefix);
    }
    if (run->parsed()) {
      return cmd_run(r_instance, r_arm, r_seed, r_max, r_fov, r_trace,
                     r_complex, r_adapter_cmd, r_adapter_timeout);
    }
    if (bench->parsed()) {
      return cmd_bench(b_config, b_out, b_instances, b_parallelism);
    }
    if (render->parsed()) {
      return cmd_render(rd_trace, rd_mode, rd_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
