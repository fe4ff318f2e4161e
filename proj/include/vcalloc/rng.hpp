#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

namespace vcalloc {

// SplitMix64 generator (Steele, Lea, Flood 2014). Small, fast, and the whole
// sequence is pinned by this header, so results do not depend on the standard
// library's unspecified distribution algorithms. Good enough statistically
// for Monte-Carlo placement at the instance sizes this library targets.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., bound-1}, unbiased (rejection sampling).
  std::uint32_t next_below(std::uint32_t bound) {
    assert(bound > 0);
    const std::uint64_t b = bound;
    const std::uint64_t reject_below = (0 - b) % b;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t v = next();
      if (v >= reject_below) return static_cast<std::uint32_t>(v % b);
    }
  }

 private:
  std::uint64_t state_;
};

// Derives an independent stream from (seed, stream). Used to give every
// solver iteration and every grid cell its own generator, so parallel and
// serial schedules produce identical results.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
  return g.next();
}

inline double uniform_in(double lo, double hi, SplitMix64& rng) {
  return lo + (hi - lo) * rng.next_double();
}

// Inclusive on both ends.
inline int uniform_int(int lo, int hi, SplitMix64& rng) {
  assert(lo <= hi);
  return lo + static_cast<int>(rng.next_below(static_cast<std::uint32_t>(hi - lo + 1)));
}

// Fisher-Yates; every permutation equally likely.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = rng.next_below(static_cast<std::uint32_t>(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace vcalloc
