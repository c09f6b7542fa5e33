#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rde/scenarios.hpp"

namespace rde {

namespace {

std::string strip_cr(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
  return s;
}

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line,
                             const std::string& what) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " +
                           what);
}

}  // namespace

GridMap read_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file " + path.string());

  int lineno = 0;
  std::string line;
  const auto next_line = [&]() {
    if (!std::getline(in, line)) parse_fail(path, lineno + 1, "unexpected EOF");
    ++lineno;
    line = strip_cr(line);
  };

  next_line();
  if (line.rfind("type", 0) != 0) parse_fail(path, lineno, "expected 'type'");
  next_line();
  int height = 0;
  if (std::sscanf(line.c_str(), "height %d", &height) != 1 || height <= 0) {
    parse_fail(path, lineno, "expected 'height N'");
  }
  next_line();
  int width = 0;
  if (std::sscanf(line.c_str(), "width %d", &width) != 1 || width <= 0) {
    parse_fail(path, lineno, "expected 'width N'");
  }
  next_line();
  if (line != "map") parse_fail(path, lineno, "expected 'map'");

  GridMap map(width, height);
  for (int r = 0; r < height; ++r) {
    next_line();
    if (static_cast<int>(line.size()) != width) {
      parse_fail(path, lineno, "row has " + std::to_string(line.size()) +
                                   " cells, expected " + std::to_string(width));
    }
    for (int c = 0; c < width; ++c) {
      if (line[c] == '@') {
        map.set_obstacle({r, c}, true);
      } else if (line[c] != '.') {
        parse_fail(path, lineno,
                   std::string("unknown cell character '") + line[c] + "'");
      }
    }
  }
  return map;
}

void write_map(const GridMap& map, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write map file " + path.string());
  out << "type octile\n";
  out << "height " << map.height() << "\n";
  out << "width " << map.width() << "\n";
  out << "map\n";
  for (const auto& row : map.to_rows()) out << row << "\n";
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Instance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open instance file " + path.string());
  }

  int lineno = 0;
  std::string line;
  const auto next_line = [&]() {
    if (!std::getline(in, line)) parse_fail(path, lineno + 1, "unexpected EOF");
    ++lineno;
    line = strip_cr(line);
  };

  next_line();
  int version = 0;
  if (std::sscanf(line.c_str(), "rde_instance %d", &version) != 1 ||
      version != 1) {
    parse_fail(path, lineno, "expected 'rde_instance 1'");
  }
  next_line();
  if (line.rfind("map ", 0) != 0) parse_fail(path, lineno, "expected 'map <path>'");
  const std::filesystem::path map_ref = line.substr(4);
  const std::filesystem::path map_path =
      map_ref.is_absolute() ? map_ref : path.parent_path() / map_ref;
  if (!std::filesystem::exists(map_path)) {
    parse_fail(path, lineno, "referenced map file not found: " + map_path.string());
  }

  next_line();
  int agents = 0;
  if (std::sscanf(line.c_str(), "agents %d", &agents) != 1 || agents < 0) {
    parse_fail(path, lineno, "expected 'agents N'");
  }

  Instance inst;
  inst.map = read_map(map_path);
  inst.starts.resize(agents);
  inst.goals.resize(agents);
  for (int i = 0; i < agents; ++i) {
    next_line();
    int id = 0, sr = 0, sc = 0, gr = 0, gc = 0;
    if (std::sscanf(line.c_str(), "%d %d %d %d %d", &id, &sr, &sc, &gr, &gc) !=
        5) {
      parse_fail(path, lineno, "expected '<id> <sr> <sc> <gr> <gc>'");
    }
    if (id != i) {
      parse_fail(path, lineno, "agent ids must be sequential, got " +
                                   std::to_string(id) + " expected " +
                                   std::to_string(i));
    }
    inst.starts[i] = {sr, sc};
    inst.goals[i] = {gr, gc};
  }
  inst.validate();
  return inst;
}

void write_instance(const Instance& instance,
                    const std::filesystem::path& instance_path,
                    const std::filesystem::path& map_path) {
  std::ofstream out(instance_path);
  if (!out) {
    throw std::runtime_error("cannot write instance file " +
                             instance_path.string());
  }
  out << "rde_instance 1\n";
  out << "map " << map_path.string() << "\n";
  out << "agents " << instance.num_agents() << "\n";
  for (int i = 0; i < instance.num_agents(); ++i) {
    out << i << " " << instance.starts[i].row << " " << instance.starts[i].col
        << " " << instance.goals[i].row << " " << instance.goals[i].col
        << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed for " + instance_path.string());
  }
}

}  // namespace rde
