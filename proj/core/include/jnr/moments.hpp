#pragma once

#include <array>
#include <compare>
#include <functional>
#include <vector>

#include "jnr/numeric.hpp"

namespace jnr {

// Exponent multi-index of the monomial t1^a1 t2^a2 t3^a3 t4^a4 on the unit
// sphere in R^4.
struct MomentKey {
  std::array<int, 4> exponents{0, 0, 0, 0};

  int degree() const {
    return exponents[0] + exponents[1] + exponents[2] + exponents[3];
  }
  bool any_odd() const {
    return (exponents[0] | exponents[1] | exponents[2] | exponents[3]) & 1;
  }
  friend auto operator<=>(const MomentKey&, const MomentKey&) = default;
};

// \int t^a dm against the rotation-invariant probability measure m on the
// sphere. Zero when any exponent is odd; otherwise
//   prod_i (a_i - 1)!!  /  (4 * 6 * ... * (|a| + 2)).
Rational exact_moment(const MomentKey& key);

// Same integral, but accepts t4 exponents > 1 by expanding
// t4^2 = 1 - t1^2 - t2^2 - t3^2 (the sphere relation).
Rational reduced_moment(const MomentKey& key);

// float128 view of reduced_moment, memoized (thread-safe).
Quad reduced_moment_q(const MomentKey& key);

// 1-D rule integrating f against the distribution of t1 under m, whose
// density is (2/pi) sqrt(1-t^2) on [-1,1]. Built from Gauss-Jacobi(1/2,-1/2)
// nodes with the (1+t) factor absorbed into the weights, which makes the rule
// exact for 1/(1+t) (the alpha = w endpoint case) as well as for polynomials
// up to exact_degree.
struct QuadratureRule1D {
  std::vector<double> nodes;    // in (-1,1)
  std::vector<double> weights;  // positive, sum to 1
  int exact_degree = 0;

  double integrate(const std::function<double(double)>& f) const;
};

QuadratureRule1D pushforward_rule(int n);

// \int (alpha + w*t1)^{-1} dm in closed form:
//   2 (alpha - sqrt(alpha^2 - w^2)) / w^2   for w > 0,
//   1/alpha                                 for w = 0.
// Requires alpha >= w >= 0 and alpha > 0 (throws std::domain_error).
double inverse_linear_integral(double alpha, double w);

// Iterated integral of h(x,y,z) against the spherical-coordinate surface
// element sin^2(x) sin(y) / (2 pi^2) over [0,pi] x [0,pi] x [0,2pi], by a
// tensor Gauss-Legendre rule with `resolution` nodes per axis.
double spherical_integral(int resolution,
                          const std::function<double(double, double, double)>& h);

// spherical_integral of 1/(1+cos x), i.e. \int 1/(1+t1) dm in spherical
// coordinates; converges to 2.
double triple_integral(int resolution);

}  // namespace jnr
