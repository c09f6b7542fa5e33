/*
 * Deterministic seedable random streams.
 *
 * Bounded draws avoid std::uniform_int_distribution on purpose: its output is
 * implementation-defined, and traces must be reproducible byte for byte.
 */
#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rde {

constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stable combine for deriving independent stream seeds, e.g.
// mix_seed(seed, episode_id, agent_id).
constexpr uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0) {
  uint64_t h = splitmix64(seed ^ 0x6A09E667F3BCC909ULL);
  h = splitmix64(h ^ a);
  h = splitmix64(h ^ b);
  return h;
}

class RngStream {
 public:
  explicit RngStream(uint64_t seed) : engine_(splitmix64(seed)) {}

  static RngStream derive(uint64_t seed, uint64_t a, uint64_t b = 0) {
    return RngStream(mix_seed(seed, a, b));
  }

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n); unbiased via rejection. Pre: n > 0.
  uint32_t next_below(uint32_t n);

  double next_unit();  // uniform in [0, 1)

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[next_below(static_cast<uint32_t>(v.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rde
