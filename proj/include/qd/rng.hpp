#pragma once

#include <cstdint>

namespace qd {

// splitmix64: 64-bit counter-based generator (Vigna). Chosen for portable,
// platform-independent streams: every draw is a pure function of the seed
// and the draw index, and per-copy streams are derived by mixing the root
// seed with the stream index.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1) with 53 bits of precision
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  static uint64_t mix(uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  // Deterministic sub-stream seed for stream `index` of a root seed.
  static uint64_t derive_stream(uint64_t seed, uint64_t index) {
    return mix(seed ^ mix(0x9E3779B97F4A7C15ULL * (index + 1)));
  }

private:
  uint64_t state_;
};

}  // namespace qd
