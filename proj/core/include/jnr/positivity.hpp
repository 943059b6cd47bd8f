#pragma once

#include <Eigen/Dense>

#include "jnr/affine.hpp"
#include "jnr/basis.hpp"
#include "jnr/operators.hpp"
#include "jnr/rng.hpp"

namespace jnr {

// nonnegative on the closed ball <=> alpha >= |omega| (up to 1e-14 slack)
bool is_admissible(const AffineFunction& f);

// the PSD slack an operator is allowed: eigenvalues >= -psd_tolerance(scale)
inline double psd_tolerance(double scale) { return 1e-10 * (1.0 + scale); }

struct PositivityReport {
  double min_eig_phi = 0.0;
  double min_eig_schur = 0.0;
  bool passed = false;
  int degree = 0;
  double c = 0.0;
};

// alpha*I + beta*T_{1,c} + gamma*T2 + delta*T3 + eps*T4 on H_N + C; the block
// form has M_f in the corner, c*beta times the constant selector off-diagonal,
// and alpha in the extra corner.
TruncatedOperator phi_apply(const AffineFunction& f, double c, const GradedBasis& basis);

// Minimum eigenvalues of the compressed alpha*M_f - c^2 beta^2 Q (Q = rank-one
// projection onto the constant function) and of phi_apply(f) itself.
// Requires f admissible (std::domain_error otherwise); alpha = 0 passes
// trivially (the zero function).
PositivityReport schur_min_eig(const AffineFunction& f, double c, const GradedBasis& basis);

struct CsChainResult {
  double lhs = 0.0;  // |<g, 1>|^2
  double rhs = 0.0;  // <M_{f/|b|} g, g> * int (f/|b|)^{-1} dm
  bool holds = false;
};

// g given by its coordinates in the orthonormal basis. Requires beta != 0.
CsChainResult cs_chain_test(const Eigen::VectorXd& g, const AffineFunction& f,
                            const GradedBasis& basis);

// Orthogonal U (a Householder reflection, possibly negated) with
// U^T omega = (|omega|, 0, 0, 0).
Eigen::Matrix4d rotate_to_axis(const Eigen::Vector4d& omega);

// sqrt(alpha / (beta^2 int f^{-1} dm)), the coupling beyond which the rank-one
// bound fails in the full (untruncated) model; +inf when beta = 0.
double limiting_threshold(const AffineFunction& f);

struct ThresholdResult {
  double c_star = 0.0;  // largest passing c at this truncation
  int degree = 0;
  double c_lo = 0.0, c_hi = 0.0;
  double tol_c = 0.0;
  double limit = 0.0;  // limiting_threshold(f)
  double min_eig_lo = 0.0, min_eig_hi = 0.0;
  int evaluations = 0;
};

// Bisects the sign of the Schur minimum eigenvalue over c. One dense
// eigendecomposition of alpha*M_f; each c is then a rank-one secular solve.
// Bracket precondition: nonnegative at c_lo, negative at c_hi (diagnostic
// error otherwise). beta = 0 returns c_hi (no constraint).
ThresholdResult threshold_bisection(const AffineFunction& f, const GradedBasis& basis,
                                    double c_lo, double c_hi, double tol_c);

// alpha ~ U[0.2, 2], omega uniform on a sphere of radius u*alpha, u ~ U[0,1]
AffineFunction random_admissible(SplitMix& rng);

}  // namespace jnr
