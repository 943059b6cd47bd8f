#pragma once

#include <Eigen/Dense>

namespace jnr {

// Affine function alpha + <z, omega> on the closed unit ball in R^4.
// Nonnegative on the ball exactly when alpha >= |omega|.
struct AffineFunction {
  double alpha = 0.0;
  Eigen::Vector4d omega = Eigen::Vector4d::Zero();

  double operator()(const Eigen::Vector4d& z) const { return alpha + omega.dot(z); }
  // the t1 coefficient, the one coupled to the extra coordinate
  double beta() const { return omega[0]; }
};

inline AffineFunction affine_constant(double alpha) { return {alpha, Eigen::Vector4d::Zero()}; }

}  // namespace jnr
