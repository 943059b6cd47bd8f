#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "jnr/errors.hpp"
#include "jnr/moments.hpp"
#include "jnr/montecarlo.hpp"
#include "jnr/rng.hpp"

using namespace jnr;

namespace {

MomentKey key(int a, int b, int c, int d) { return MomentKey{{a, b, c, d}}; }

double quad_oracle_pure_t1(int exponent, int nodes = 64) {
  // independent route: 1-D pushforward quadrature of t^a
  return pushforward_rule(nodes).integrate(
      [exponent](double t) { return std::pow(t, exponent); });
}

}  // namespace

TEST_CASE("exact moments: pinned values") {
  CHECK(exact_moment(key(1, 0, 0, 0)) == Rational(0));
  CHECK(exact_moment(key(2, 0, 0, 0)) == Rational(1, 4));
  CHECK(exact_moment(key(4, 0, 0, 0)) == Rational(1, 8));
  CHECK(exact_moment(key(2, 2, 0, 0)) == Rational(1, 24));
  CHECK(exact_moment(key(0, 0, 0, 0)) == Rational(1));
  // the squared-sum expansion: 4 pure fourth moments + 12 mixed ones
  CHECK(4 * exact_moment(key(4, 0, 0, 0)) + 12 * exact_moment(key(2, 2, 0, 0)) ==
        Rational(1));
}

TEST_CASE("exact moments vs quadrature oracle") {
  CHECK(std::abs(quad_oracle_pure_t1(4) - 0.125) < 1e-14);
  for (int a = 0; a <= 12; a += 2)
    CHECK(std::abs(quad_oracle_pure_t1(a) - to_double(exact_moment(key(a, 0, 0, 0)))) <
          1e-13);
}

TEST_CASE("exact moments vs Monte Carlo oracle") {
  for (const auto& k : {key(4, 0, 0, 0), key(2, 2, 0, 0), key(2, 0, 2, 0)}) {
    const auto mc = mc_integral(
        [&](const std::array<double, 4>& t) {
          double v = 1.0;
          for (int i = 0; i < 4; ++i)
            for (int e = 0; e < k.exponents[i]; ++e) v *= t[i];
          return v;
        },
        McConfig{400'000, 2024});
    CHECK(std::abs(mc.estimate - to_double(exact_moment(k))) < 4.0 * mc.std_error);
  }
}

TEST_CASE("moment sum rule: multiplying by sum of squares is the identity") {
  // all even keys with |a| <= 12, exact rational equality
  for (int a = 0; a <= 12; a += 2)
    for (int b = 0; a + b <= 12; b += 2)
      for (int c = 0; a + b + c <= 12; c += 2)
        for (int d = 0; a + b + c + d <= 12; d += 2) {
          Rational sum = 0;
          for (int i = 0; i < 4; ++i) {
            MomentKey k2 = key(a, b, c, d);
            k2.exponents[i] += 2;
            sum += exact_moment(k2);
          }
          CHECK(sum == exact_moment(key(a, b, c, d)));
        }
}

TEST_CASE("moment symmetry: permutation invariance and odd vanishing") {
  CHECK(exact_moment(key(2, 4, 0, 0)) == exact_moment(key(0, 2, 0, 4)));
  CHECK(exact_moment(key(6, 2, 2, 0)) == exact_moment(key(2, 2, 0, 6)));
  CHECK(exact_moment(key(3, 2, 0, 0)) == Rational(0));
  CHECK(exact_moment(key(0, 0, 1, 0)) == Rational(0));
}

TEST_CASE("reduced moments expand the sphere relation") {
  // t4^2 = 1 - t1^2 - t2^2 - t3^2, so <t4^2> = 1 - 3*(1/4)
  CHECK(reduced_moment(key(0, 0, 0, 2)) == Rational(1, 4));
  CHECK(reduced_moment(key(0, 0, 0, 4)) == exact_moment(key(4, 0, 0, 0)));
  CHECK(reduced_moment(key(2, 0, 0, 2)) == exact_moment(key(2, 2, 0, 0)));
}

TEST_CASE("pushforward rule invariants") {
  for (int n : {8, 32, 64}) {
    const auto rule = pushforward_rule(n);
    REQUIRE(rule.nodes.size() == static_cast<std::size_t>(n));
    double wsum = 0.0;
    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
      CHECK(rule.weights[i] > 0.0);
      CHECK(rule.nodes[i] > -1.0);
      CHECK(rule.nodes[i] < 1.0);
      wsum += rule.weights[i];
    }
    CHECK(std::abs(wsum - 1.0) < 1e-12);
    CHECK(rule.exact_degree == 2 * n - 2);
  }
  // polynomial exactness up to the stated degree
  const auto rule = pushforward_rule(8);
  for (int a = 0; a <= rule.exact_degree; ++a) {
    const double exact = (a % 2) ? 0.0 : to_double(exact_moment(key(a, 0, 0, 0)));
    CHECK(std::abs(rule.integrate([a](double t) { return std::pow(t, a); }) - exact) <
          1e-14);
  }
}

TEST_CASE("inverse linear integral: closed form and oracle agreement") {
  CHECK(inverse_linear_integral(1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(inverse_linear_integral(3.0, 0.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  const double expected21 = 4.0 - 2.0 * std::sqrt(3.0);  // 0.5358983848622456
  CHECK(std::abs(inverse_linear_integral(2.0, 1.0) - expected21) < 1e-14);

  const auto rule = pushforward_rule(64);
  for (double alpha : {0.5, 1.0, 2.0, 4.0})
    for (double ratio : {0.0, 0.2, 0.4, 0.6, 0.8, 0.95, 1.0}) {
      const double w = ratio * alpha;
      const double quad = rule.integrate([&](double t) { return 1.0 / (alpha + w * t); });
      CHECK(std::abs(quad - inverse_linear_integral(alpha, w)) < 1e-10);
    }
}

TEST_CASE("inverse linear integral: domain errors") {
  CHECK_THROWS_AS(inverse_linear_integral(1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(inverse_linear_integral(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(inverse_linear_integral(-1.0, 0.5), std::domain_error);
}

TEST_CASE("spherical triple quadrature") {
  // normalization of the measure: constant integrand
  CHECK(std::abs(spherical_integral(8, [](double, double, double) { return 1.0; }) - 1.0) <
        1e-10);
  CHECK(std::abs(spherical_integral(50, [](double, double, double) { return 1.0; }) - 1.0) <
        1e-10);
  CHECK(std::abs(triple_integral(50) - 2.0) < 1e-3);
  CHECK(std::abs(triple_integral(400) - 2.0) < 1e-8);
  CHECK_THROWS_AS(triple_integral(1), UsageError);
}
