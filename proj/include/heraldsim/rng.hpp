#pragma once

#include <cstdint>

namespace heraldsim {

// Counter-based pseudorandom stream (SplitMix64 over an incrementing
// counter).  Substreams derived from (master seed, stream index) are
// statistically independent and reproducible under any worker count.
class Rng {
 public:
  explicit Rng(uint64_t seed) : key_(mix(seed ^ 0x6a09e667f3bcc909ull)), counter_(0) {}

  // Independent substream for trial `index` of stream family `family`.
  static Rng substream(uint64_t master_seed, uint64_t family, uint64_t index) {
    uint64_t k = mix(master_seed + 0x9e3779b97f4a7c15ull * (family + 1));
    k = mix(k ^ (index + 0xbf58476d1ce4e5b9ull));
    Rng r(0);
    r.key_ = k;
    r.counter_ = 0;
    return r;
  }

  uint64_t u64() { return mix(key_ + (counter_++) * 0x9e3779b97f4a7c15ull); }

  bool bit() { return (u64() >> 63) != 0; }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer in [0, n).
  uint64_t below(uint64_t n) {
    // Rejection-free modulo is fine here: n is tiny (<= a few dozen).
    return u64() % n;
  }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }

  uint64_t key_;
  uint64_t counter_;
};

}  // namespace heraldsim
