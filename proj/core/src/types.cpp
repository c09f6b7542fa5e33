#include "rde/types.hpp"

namespace rde {

std::optional<Action> action_from_char(char c) {
  switch (c) {
    case 'U': return Action::Up;
    case 'D': return Action::Down;
    case 'L': return Action::Left;
    case 'R': return Action::Right;
    case 'S': return Action::Stay;
    default: return std::nullopt;
  }
}

std::optional<Action> direction_between(Position from, Position to) {
  for (Action a : kMoveActions) {
    if (apply_action(from, a) == to) return a;
  }
  return std::nullopt;
}

}  // namespace rde
