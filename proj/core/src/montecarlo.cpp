#include "jnr/montecarlo.hpp"

#include <cmath>
#include <string>

#include "jnr/errors.hpp"
#include "jnr/rng.hpp"

namespace jnr {

std::array<double, 4> sphere_point(std::uint64_t seed, std::int64_t index) {
  auto g = gaussian4(seed, static_cast<std::uint64_t>(index));
  const double r = std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
  return {g[0] / r, g[1] / r, g[2] / r, g[3] / r};
}

McResult mc_integral(const std::function<double(const std::array<double, 4>&)>& h,
                     const McConfig& cfg) {
  if (cfg.sample_count < 1) throw UsageError("mc_integral: sample_count must be >= 1");
  double mean = 0.0, m2 = 0.0;
  for (std::int64_t i = 0; i < cfg.sample_count; ++i) {
    const double v = h(sphere_point(cfg.seed, i));
    if (!std::isfinite(v))
      throw NumericalError("mc_integral: integrand non-finite at sample " +
                           std::to_string(i));
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  McResult r;
  r.estimate = mean;
  const auto n = static_cast<double>(cfg.sample_count);
  r.std_error = cfg.sample_count > 1 ? std::sqrt(m2 / ((n - 1.0) * n)) : 0.0;
  return r;
}

}  // namespace jnr
