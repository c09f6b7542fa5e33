#include "rde/trace.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rde {

namespace {

using nlohmann::json;

json position_json(const Position& p) { return json::array({p.row, p.col}); }

Position position_from(const json& j) {
  return Position{j.at(0).get<int>(), j.at(1).get<int>()};
}

json conflict_json(const Conflict& c) {
  json j{{"kind", c.kind == Conflict::Kind::Vertex ? "vertex" : "edge"},
         {"i", c.agent_i},
         {"j", c.agent_j},
         {"cell", position_json(c.cell)}};
  if (c.kind == Conflict::Kind::Edge) j["cell_other"] = position_json(c.cell_other);
  return j;
}

Conflict conflict_from(const json& j, int timestep) {
  Conflict c;
  c.kind = j.at("kind").get<std::string>() == "edge" ? Conflict::Kind::Edge
                                                     : Conflict::Kind::Vertex;
  c.agent_i = j.at("i").get<int>();
  c.agent_j = j.at("j").get<int>();
  c.cell = position_from(j.at("cell"));
  c.cell_other = j.contains("cell_other") ? position_from(j.at("cell_other"))
                                          : c.cell;
  c.timestep = timestep;
  return c;
}

char source_char(PolicySource s) {
  switch (s) {
    case PolicySource::Cooperative: return 'C';
    case PolicySource::Dhm: return 'D';
    case PolicySource::Escape: return 'E';
  }
  return '?';
}

PolicySource source_from_char(char c) {
  switch (c) {
    case 'C': return PolicySource::Cooperative;
    case 'D': return PolicySource::Dhm;
    case 'E': return PolicySource::Escape;
    default: throw std::runtime_error("trace: unknown source char");
  }
}

}  // namespace

void write_trace(const Trace& trace, const EpisodeResult* result,
                 const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write trace file " + path.string());
  }

  json header{{"type", "header"},
              {"version", 1},
              {"map_width", trace.map.width()},
              {"map_height", trace.map.height()},
              {"map_rows", trace.map.to_rows()},
              {"seed", trace.seed},
              {"arm", trace.arm_label}};
  json starts = json::array();
  for (const auto& p : trace.starts) starts.push_back(position_json(p));
  json goals = json::array();
  for (const auto& p : trace.goals) goals.push_back(position_json(p));
  header["starts"] = starts;
  header["goals"] = goals;
  out << header.dump() << "\n";

  for (const auto& step : trace.steps) {
    json positions = json::array();
    for (const auto& p : step.positions) positions.push_back(position_json(p));
    std::string actions, sources;
    for (Action a : step.actions) actions.push_back(action_char(a));
    for (PolicySource s : step.sources) sources.push_back(source_char(s));
    json conflicts = json::array();
    for (const auto& c : step.conflicts) conflicts.push_back(conflict_json(c));
    json record{{"type", "step"},       {"t", step.timestep},
                {"positions", positions}, {"actions", actions},
                {"sources", sources},     {"conflicts", conflicts}};
    out << record.dump() << "\n";
  }

  if (result) {
    json record{{"type", "result"},
                {"success", result->success},
                {"makespan", result->makespan},
                {"failure", to_string(result->failure)},
                {"path_costs", result->agent_path_costs},
                {"usage",
                 {{"cooperative", result->usage.cooperative},
                  {"dhm", result->usage.dhm},
                  {"escape", result->usage.escape}}}};
    out << record.dump() << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

TraceFile read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trace file " + path.string());
  }

  TraceFile tf;
  bool have_header = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": bad JSON: " + e.what());
    }
    const auto type = j.at("type").get<std::string>();
    if (type == "header") {
      tf.trace.map = GridMap::from_rows(
          j.at("map_rows").get<std::vector<std::string>>());
      for (const auto& p : j.at("starts")) {
        tf.trace.starts.push_back(position_from(p));
      }
      for (const auto& p : j.at("goals")) {
        tf.trace.goals.push_back(position_from(p));
      }
      tf.trace.seed = j.at("seed").get<uint64_t>();
      tf.trace.arm_label = j.value("arm", "");
      have_header = true;
    } else if (type == "step") {
      if (!have_header) {
        throw std::runtime_error(path.string() + ": step before header");
      }
      StepRecord step;
      step.timestep = j.at("t").get<int>();
      for (const auto& p : j.at("positions")) {
        step.positions.push_back(position_from(p));
      }
      for (char c : j.at("actions").get<std::string>()) {
        const auto a = action_from_char(c);
        if (!a) throw std::runtime_error(path.string() + ": bad action char");
        step.actions.push_back(*a);
      }
      for (char c : j.at("sources").get<std::string>()) {
        step.sources.push_back(source_from_char(c));
      }
      for (const auto& c : j.at("conflicts")) {
        step.conflicts.push_back(conflict_from(c, step.timestep));
      }
      const size_t m = tf.trace.starts.size();
      if (step.positions.size() != m || step.actions.size() != m ||
          step.sources.size() != m) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                 ": step record size mismatch");
      }
      tf.trace.steps.push_back(std::move(step));
    } else if (type == "result") {
      EpisodeResult r;
      r.success = j.at("success").get<bool>();
      r.makespan = j.at("makespan").get<int>();
      const auto failure = j.at("failure").get<std::string>();
      r.failure = failure == "none"
                      ? FailureKind::None
                      : (failure == "timeout" ? FailureKind::Timeout
                                              : FailureKind::AdapterFailure);
      r.agent_path_costs = j.at("path_costs").get<std::vector<int>>();
      r.usage.cooperative = j.at("usage").at("cooperative").get<long>();
      r.usage.dhm = j.at("usage").at("dhm").get<long>();
      r.usage.escape = j.at("usage").at("escape").get<long>();
      tf.result = std::move(r);
    } else {
      throw std::runtime_error(path.string() + ": unknown record type '" +
                               type + "'");
    }
  }
  if (!have_header) {
    throw std::runtime_error(path.string() + ": missing header record");
  }
  return tf;
}

}  // namespace rde
