#ifndef REPRANK_RNG_HPP
#define REPRANK_RNG_HPP

#include <cstdint>

namespace reprank {

// Counter-friendly 64-bit generator (splitmix64). Every consumer in the
// project draws randomness through this type so results do not depend on
// the standard library's distribution implementations or on thread
// scheduling: a stream can be derived from (seed, counter...) alone.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, n). Uses rejection to avoid modulo bias.
  uint64_t next_below(uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [lo, hi).
  double next_range(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

 private:
  uint64_t state_;
};

// Mixes a seed with stream coordinates into an independent stream state.
inline uint64_t derive_stream(uint64_t seed, uint64_t a, uint64_t b = 0) {
  SplitMix64 mix(seed ^ (a * 0xd1342543de82ef95ULL) ^
                 (b * 0xaf251af3b0f025b5ULL));
  mix.next();
  return mix.next();
}

}  // namespace reprank

#endif
