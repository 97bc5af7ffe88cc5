#pragma once

#include <cstdint>

namespace cbie {

// 64-bit LCG (Knuth MMIX constants). uniform() takes the top 53 bits.
//   state <- state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
//   uniform = (state >> 11) * 2^-53, in [0, 1)
// The state is advanced before each draw; seed 42 is the default everywhere.
class Lcg {
 public:
  static constexpr std::uint64_t default_seed = 42;

  explicit Lcg(std::uint64_t seed = default_seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

}  // namespace cbie
