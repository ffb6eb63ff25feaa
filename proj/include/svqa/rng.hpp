#pragma once

#include <cstdint>
#include <cstddef>

namespace svqa {

// splitmix64 step; used both as a stream expander and as a seed mixer so that
// derived streams are reproducible across platforms and standard libraries.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Order-sensitive mix of a seed with a tag/index. Chains splitmix64.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t s = seed ^ (0x6a09e667f3bcc909ull + tag);
  std::uint64_t a = splitmix64(s);
  s ^= tag * 0x9e3779b97f4a7c15ull;
  return a ^ splitmix64(s);
}

// Small deterministic generator (xoshiro256**). All distributions below are
// implemented by hand; std::<distribution> output is implementation-defined
// and would break the bit-exact reproducibility contracts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1) with 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Rejection-free masked draw.
  std::uint64_t uniform_int(std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = ~0ull >> __builtin_clzll((n - 1) | 1);
    std::uint64_t draw;
    do {
      draw = next() & mask;
    } while (draw >= n);
    return draw;
  }

  int uniform_index(int n) { return static_cast<int>(uniform_int(static_cast<std::uint64_t>(n))); }

  bool bernoulli(double p) { return uniform() < p; }

  // Derive an independent child stream; advances this stream by one draw.
  Rng child() { return Rng(next()); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t s_[4];
};

}  // namespace svqa
