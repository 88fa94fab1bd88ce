#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace majorbn {

// All randomized operations in this library run on xoshiro256**, seeded
// through splitmix64. Both generators are defined by pure 64-bit integer
// arithmetic, so a seed produces the same stream on every platform.

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Inverse-CDF draw over state indices: the smallest index whose running
  // probability sum exceeds the uniform draw. Falls back to the last
  // positive entry when rounding leaves the total slightly below 1.
  int draw_state(std::span<const double> probabilities) {
    const double u = next_unit();
    double cumulative = 0.0;
    int last_positive = 0;
    for (int i = 0; i < static_cast<int>(probabilities.size()); ++i) {
      if (probabilities[i] > 0.0) last_positive = i;
      cumulative += probabilities[i];
      if (u < cumulative) return i;
    }
    return last_positive;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

// Deterministic substream seed for shard/row `stream` of root seed `root`.
// Sharded sampling and per-row evaluation seeds both go through this, so a
// root seed fully determines every generated number.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t state = root ^ 0xd1b54a32d192ed03ULL;
  std::uint64_t a = splitmix64_next(state);
  state ^= stream * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
  return a ^ splitmix64_next(state);
}

}  // namespace majorbn
