#pragma once

#include <cstdint>
#include <random>

namespace swarmfold {

// 64-bit Mersenne Twister with a hand-rolled uniform mapping. The engine's
// output sequence is fixed by the standard; std::uniform_real_distribution is
// not, so draws are converted from the top 53 bits directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double canonical() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace swarmfold
