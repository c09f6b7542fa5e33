/*
 * Grid-world primitives: positions, actions and conflicts.
 *
 * Coordinate convention: row 0 is the top row, Up decreases the row index.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

namespace rde {

struct Position {
  int row = 0;
  int col = 0;

  bool operator==(const Position&) const = default;
};

enum class Action : uint8_t { Up, Down, Left, Right, Stay };

// The restricted action set used by the escape policy (every move, no Stay).
inline constexpr Action kMoveActions[4] = {Action::Up, Action::Down,
                                           Action::Left, Action::Right};

constexpr Action opposite(Action a) {
  switch (a) {
    case Action::Up: return Action::Down;
    case Action::Down: return Action::Up;
    case Action::Left: return Action::Right;
    case Action::Right: return Action::Left;
    case Action::Stay: return Action::Stay;
  }
  return Action::Stay;
}

constexpr char action_char(Action a) {
  switch (a) {
    case Action::Up: return 'U';
    case Action::Down: return 'D';
    case Action::Left: return 'L';
    case Action::Right: return 'R';
    case Action::Stay: return 'S';
  }
  return 'S';
}

std::optional<Action> action_from_char(char c);

// Pure coordinate arithmetic. May step off the map; validity is a separate
// check owned by the caller.
constexpr Position apply_action(Position pos, Action a) {
  switch (a) {
    case Action::Up: return {pos.row - 1, pos.col};
    case Action::Down: return {pos.row + 1, pos.col};
    case Action::Left: return {pos.row, pos.col - 1};
    case Action::Right: return {pos.row, pos.col + 1};
    case Action::Stay: return pos;
  }
  return pos;
}

// Unit move direction from one cell to an adjacent one; empty when both are
// the same cell. Used for the straight-preference tie-break.
std::optional<Action> direction_between(Position from, Position to);

// Vertex: agents i and j both end up in `cell`.
// Edge: agent i moves cell -> cell_other while agent j moves cell_other -> cell.
struct Conflict {
  enum class Kind : uint8_t { Vertex, Edge };

  Kind kind = Kind::Vertex;
  int agent_i = 0;
  int agent_j = 0;
  Position cell;
  Position cell_other;
  int timestep = 0;

  bool operator==(const Conflict&) const = default;
};

}  // namespace rde

template <>
struct std::hash<rde::Position> {
  size_t operator()(const rde::Position& p) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(p.row) << 32) ^
                                  static_cast<unsigned>(p.col));
  }
};
