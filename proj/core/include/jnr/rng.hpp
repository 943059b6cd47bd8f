#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace jnr {

// splitmix64 finalizer. Counter-based access keeps every sample addressable by
// (seed, index), so parallel substreams are deterministic under a fixed seed.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_u64(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed + index * 0x9E3779B97F4A7C15ull);
}

// uniform in (0,1); never returns 0 or 1
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  return (static_cast<double>(counter_u64(seed, index) >> 11) + 0.5) * 0x1p-53;
}

// 4 iid standard gaussians for sample `index` (two Box-Muller pairs)
inline std::array<double, 4> gaussian4(std::uint64_t seed, std::uint64_t index) {
  const double u0 = counter_uniform(seed, 4 * index);
  const double u1 = counter_uniform(seed, 4 * index + 1);
  const double u2 = counter_uniform(seed, 4 * index + 2);
  const double u3 = counter_uniform(seed, 4 * index + 3);
  const double r0 = std::sqrt(-2.0 * std::log(u0));
  const double r1 = std::sqrt(-2.0 * std::log(u2));
  const double two_pi = 2.0 * M_PI;
  return {r0 * std::cos(two_pi * u1), r0 * std::sin(two_pi * u1),
          r1 * std::cos(two_pi * u3), r1 * std::sin(two_pi * u3)};
}

// Small sequential stream on top of the counter generator.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t next_u64() { return counter_u64(seed_, counter_++); }
  double uniform() { return counter_uniform(seed_, counter_++); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian() {
    const double u0 = uniform();
    const double u1 = uniform();
    return std::sqrt(-2.0 * std::log(u0)) * std::cos(2.0 * M_PI * u1);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace jnr
