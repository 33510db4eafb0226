#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace peersplit {

// Stateless splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256** seeded through splitmix64. All simulation randomness flows
// through this generator so runs reproduce bit-for-bit across platforms;
// std::mt19937 would work too, but std::shuffle / std::uniform_int_distribution
// are not specified bit-exactly and may differ between standard libraries.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept {
    SplitMix64 sm(seed);
    for (auto& w : state_) w = sm.next();
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~0ULL; }

  std::uint64_t next() noexcept {
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

  result_type operator()() noexcept { return next(); }

  // Uniform integer in [0, bound), bound >= 1. Rejection sampling, unbiased.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Fisher-Yates.
  template <typename T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Counter-based seed derivation: deterministic, order-independent of
// evaluation, and collision-free for the small structured indices used by
// sweeps (point index, range index, run index).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t word) noexcept {
  return mix64(base + 0x9E3779B97F4A7C15ULL * (word + 1));
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t w1,
                                    std::uint64_t w2) noexcept {
  return derive_seed(derive_seed(base, w1), w2);
}

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t w1, std::uint64_t w2,
                                    std::uint64_t w3) noexcept {
  return derive_seed(derive_seed(base, w1, w2), w3);
}

}  // namespace peersplit
