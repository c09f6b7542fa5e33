#include <algorithm>
#include <sstream>

#include "rde/bench.hpp"

namespace rde {

namespace {

// Lowercase letter per agent, uppercase once it sits on its own goal.
char agent_glyph(int id, bool on_goal) {
  const char base = static_cast<char>('a' + id % 26);
  return on_goal ? static_cast<char>(base - 'a' + 'A') : base;
}

std::string ascii_frame(const Trace& trace, int timestep,
                        const std::vector<Position>& positions) {
  auto rows = trace.map.to_rows();
  for (const auto& g : trace.goals) rows[g.row][g.col] = '*';
  for (size_t i = 0; i < positions.size(); ++i) {
    const Position p = positions[i];
    rows[p.row][p.col] =
        agent_glyph(static_cast<int>(i), p == trace.goals[i]);
  }
  std::ostringstream os;
  os << "t=" << timestep << "\n";
  for (const auto& row : rows) os << row << "\n";
  return os.str();
}

std::string svg_frame(const Trace& trace, int timestep,
                      const std::vector<Position>& positions) {
  constexpr int kCell = 16;
  const int w = trace.map.width() * kCell;
  const int h = trace.map.height() * kCell;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
     << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h
     << "\" fill=\"#ffffff\"/>\n";
  os << "<!-- t=" << timestep << " -->\n";
  for (int r = 0; r < trace.map.height(); ++r) {
    for (int c = 0; c < trace.map.width(); ++c) {
      if (trace.map.is_obstacle({r, c})) {
        os << "<rect x=\"" << c * kCell << "\" y=\"" << r * kCell
           << "\" width=\"" << kCell << "\" height=\"" << kCell
           << "\" fill=\"#4b4b4b\"/>\n";
      }
    }
  }
  const int m = trace.num_agents();
  for (int i = 0; i < m; ++i) {
    const Position g = trace.goals[i];
    os << "<rect x=\"" << g.col * kCell + 2 << "\" y=\"" << g.row * kCell + 2
       << "\" width=\"" << kCell - 4 << "\" height=\"" << kCell - 4
       << "\" fill=\"none\" stroke=\"hsl(" << (i * 360 / std::max(m, 1))
       << ",70%,45%)\" stroke-width=\"1.5\"/>\n";
  }
  for (int i = 0; i < m; ++i) {
    const Position p = positions[i];
    os << "<circle cx=\"" << p.col * kCell + kCell / 2 << "\" cy=\""
       << p.row * kCell + kCell / 2 << "\" r=\"" << kCell / 2 - 2
       << "\" fill=\"hsl(" << (i * 360 / std::max(m, 1)) << ",70%,55%)\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

std::vector<std::string> render_trace_frames(const Trace& trace,
                                             RenderMode mode) {
  std::vector<std::string> frames;
  frames.reserve(trace.steps.size());
  for (const auto& step : trace.steps) {
    frames.push_back(mode == RenderMode::Ascii
                         ? ascii_frame(trace, step.timestep, step.positions)
                         : svg_frame(trace, step.timestep, step.positions));
  }
  return frames;
}

}  // namespace rde
