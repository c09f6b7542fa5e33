#include "rde/rng.hpp"

namespace rde {

uint32_t RngStream::next_below(uint32_t n) {
  // Rejection sampling over the top 32 bits keeps the draw unbiased.
  const uint64_t bound = n;
  const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<uint32_t>(x % bound);
}

double RngStream::next_unit() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

}  // namespace rde
