#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Deterministic per-trajectory random streams. Each trajectory gets its own
// engine keyed by (seed, trajectory index), so results do not depend on
// evaluation order and are reproducible across platforms. Gaussian variates
// use an explicit Box-Muller transform instead of std::normal_distribution,
// whose output is implementation-defined.

namespace ddm {

class Prng {
 public:
  Prng(uint64_t seed, uint64_t stream) {
    std::seed_seq seq{uint32_t(seed), uint32_t(seed >> 32), uint32_t(stream),
                      uint32_t(stream >> 32)};
    eng_.seed(seq);
  }

  // uniform on (0,1]; never returns 0 so log() below is safe
  double uniform() {
    return (double(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  // standard normal; consumes exactly two uniform draws per call
  double gaussian() {
    double u1 = uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ddm
