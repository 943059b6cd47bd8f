#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/float128.hpp>

namespace jnr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// 113-bit binary float. The monomial Gram matrices handled by the basis
// builder reach condition numbers ~1e17 at degree 16, so double (and even
// 80-bit extended) precision cannot hold the orthonormalization residual
// below the 1e-10 contract; quad precision leaves ~17 digits of headroom.
using Quad = boost::multiprecision::float128;

inline Quad to_quad(const Rational& r) { return r.convert_to<Quad>(); }
inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const Quad& q) { return q.convert_to<double>(); }

}  // namespace jnr
