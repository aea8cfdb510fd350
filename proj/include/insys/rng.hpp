#ifndef INSYS_RNG_HPP
#define INSYS_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace insys {

/// splitmix64; used for seeding and for the trial stream split.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Stream-split rule: trial i runs on seed = splitmix64(master ^ mix(i+1)).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t s = index + 1;
  std::uint64_t mixed = splitmix64(s);
  std::uint64_t t = master ^ mixed;
  return splitmix64(t);
}

/// xoshiro256++ (Blackman & Vigna), seeded by splitmix64 expansion.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Exponential(rate) by inverse CDF.
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace insys

#endif
