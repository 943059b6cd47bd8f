#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace jnr {

struct McConfig {
  std::int64_t sample_count = 1'000'000;
  std::uint64_t seed = 42;
};

struct McResult {
  double estimate = 0.0;
  double std_error = 0.0;
};

// Uniform point on the sphere: 4-vector of iid standard gaussians, normalized.
// Counter-based, so sample `index` is the same regardless of evaluation order.
std::array<double, 4> sphere_point(std::uint64_t seed, std::int64_t index);

// Unbiased estimate of \int h dm with standard error (Welford accumulation).
// Throws NumericalError if h returns a non-finite value at a sampled point.
McResult mc_integral(const std::function<double(const std::array<double, 4>&)>& h,
                     const McConfig& cfg);

}  // namespace jnr
