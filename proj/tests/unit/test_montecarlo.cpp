#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "jnr/errors.hpp"
#include "jnr/moments.hpp"
#include "jnr/montecarlo.hpp"
#include "jnr/rng.hpp"

using namespace jnr;

TEST_CASE("sphere points are unit and deterministic") {
  for (int i = 0; i < 100; ++i) {
    const auto p = sphere_point(42, i);
    const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
    CHECK(std::abs(n - 1.0) < 1e-14);
  }
  CHECK(sphere_point(42, 17) == sphere_point(42, 17));
  CHECK(sphere_point(42, 17) != sphere_point(43, 17));
}

TEST_CASE("constant integrand: exact mean, zero standard error") {
  const auto r = mc_integral([](const std::array<double, 4>&) { return 1.0; },
                             McConfig{10'000, 1});
  CHECK(r.estimate == 1.0);
  CHECK(r.std_error == 0.0);
}

TEST_CASE("t1^2 matches the exact moment within 4 sigma") {
  const auto r = mc_integral(
      [](const std::array<double, 4>& t) { return t[0] * t[0]; }, McConfig{1'000'000, 42});
  CHECK(std::abs(r.estimate - 0.25) < 4.0 * r.std_error);
}

TEST_CASE("inverse linear integrand matches the closed-form value within 4 sigma") {
  const auto r = mc_integral(
      [](const std::array<double, 4>& t) { return 1.0 / (1.0 + t[0]); },
      McConfig{1'000'000, 42});
  CHECK(std::abs(r.estimate - 2.0) < 4.0 * r.std_error);
}

TEST_CASE("identical seed gives identical estimates") {
  auto h = [](const std::array<double, 4>& t) { return t[0] * t[1] + t[2]; };
  const auto a = mc_integral(h, McConfig{50'000, 7});
  const auto b = mc_integral(h, McConfig{50'000, 7});
  CHECK(a.estimate == b.estimate);
  CHECK(a.std_error == b.std_error);
}

TEST_CASE("non-finite integrand raises") {
  CHECK_THROWS_AS(mc_integral(
                      [](const std::array<double, 4>& t) { return 1.0 / (t[0] - t[0]); },
                      McConfig{100, 1}),
                  NumericalError);
  CHECK_THROWS_AS(mc_integral([](const std::array<double, 4>&) { return 1.0; },
                              McConfig{0, 1}),
                  UsageError);
}

TEST_CASE("rotation invariance: integrals agree for rotated polynomials") {
  SplitMix rng(99);
  // random degree-<=4 polynomial as a function object
  std::vector<std::array<int, 4>> keys;
  std::vector<double> coef;
  for (int trial = 0; trial < 10; ++trial) {
    keys.clear();
    coef.clear();
    for (int m = 0; m < 6; ++m) {
      std::array<int, 4> k{};
      int total = 0;
      for (auto& e : k) {
        e = static_cast<int>(rng.next_u64() % 3);
        total += e;
      }
      if (total > 4) k = {1, 1, 0, 0};
      keys.push_back(k);
      coef.push_back(rng.uniform(-1.0, 1.0));
    }
    auto poly = [&](const Eigen::Vector4d& z) {
      double v = 0.0;
      for (std::size_t m = 0; m < keys.size(); ++m) {
        double term = coef[m];
        for (int i = 0; i < 4; ++i)
          for (int e = 0; e < keys[m][i]; ++e) term *= z(i);
        v += term;
      }
      return v;
    };
    // random orthogonal matrix from a QR factorization
    Eigen::Matrix4d G;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) G(i, j) = rng.gaussian();
    const Eigen::Matrix4d U = Eigen::HouseholderQR<Eigen::Matrix4d>(G).householderQ();

    const McConfig cfg{200'000, 1234 + static_cast<std::uint64_t>(trial)};
    const auto plain = mc_integral(
        [&](const std::array<double, 4>& t) {
          return poly(Eigen::Vector4d(t[0], t[1], t[2], t[3]));
        },
        cfg);
    const auto rotated = mc_integral(
        [&](const std::array<double, 4>& t) {
          return poly(U * Eigen::Vector4d(t[0], t[1], t[2], t[3]));
        },
        cfg);
    const double combined =
        std::sqrt(plain.std_error * plain.std_error + rotated.std_error * rotated.std_error);
    CHECK(std::abs(plain.estimate - rotated.estimate) < 5.0 * combined + 1e-12);
  }
}
