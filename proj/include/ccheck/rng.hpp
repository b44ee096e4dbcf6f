#pragma once

#include <cstdint>

namespace ccheck {

// splitmix64: tiny, fast, and identical output on every platform, which the
// simulator needs for reproducible runs keyed by seed.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform value in [0, n); n must be positive.  Modulo bias is irrelevant
  // for the small ranges used here.
  uint32_t below(uint32_t n) { return static_cast<uint32_t>(next() % n); }

  // True with probability num/den.
  bool chance(uint32_t num, uint32_t den) { return below(den) < num; }

 private:
  uint64_t state_;
};

}  // namespace ccheck
