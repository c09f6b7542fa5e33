/*
 * Shared test fixtures.
 */
#pragma once

#include "rde/scenarios.hpp"

namespace rde::testing {

// Two agents facing each other in a one-cell corridor whose only passing
// room is a two-cell pocket under the middle. Symmetric greedy approaches
// deterministically jam head-to-head; only a random sidestep can unjam them.
inline Instance corridor_duel() {
  Instance inst;
  inst.map = GridMap::from_rows({
      "@@@@@@@@@",
      "@.......@",
      "@@@@.@@@@",
      "@@@@.@@@@",
      "@@@@@@@@@",
  });
  inst.starts = {{1, 1}, {1, 7}};
  inst.goals = {{1, 7}, {1, 1}};
  return inst;
}

}  // namespace rde::testing
