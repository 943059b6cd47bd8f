#include "jnr/positivity.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "jnr/eig.hpp"
#include "jnr/errors.hpp"
#include "jnr/moments.hpp"

namespace jnr {

bool is_admissible(const AffineFunction& f) {
  return f.alpha >= f.omega.norm() - 1e-14;
}

TruncatedOperator phi_apply(const AffineFunction& f, double c, const GradedBasis& basis) {
  if (!(c > 0.0)) throw UsageError("phi_apply: coupling constant must be positive");
  const int n = basis.dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = affine_mult_matrix(basis, f);
  M(n, n) = f.alpha;
  M(0, n) = M(n, 0) = c * f.beta();

  TruncatedOperator op;
  op.entries = M.cast<std::complex<double>>();
  op.degree_cap = basis.degree_cap;
  op.grade_offsets = basis.grade_offsets;
  op.label = "Phi(f)";
  return op;
}

PositivityReport schur_min_eig(const AffineFunction& f, double c, const GradedBasis& basis) {
  if (!is_admissible(f))
    throw std::domain_error("schur_min_eig: f is not nonnegative on the closed ball");
  PositivityReport rep;
  rep.degree = basis.degree_cap;
  rep.c = c;
  if (f.alpha == 0.0) {  // admissible with alpha = 0 means f = 0
    rep.passed = true;
    return rep;
  }
  const double beta = f.beta();
  Eigen::MatrixXd S = f.alpha * affine_mult_matrix(basis, f);
  S(0, 0) -= c * c * beta * beta;
  rep.min_eig_schur = sym_min_eigenvalue(S);

  const TruncatedOperator phi = phi_apply(f, c, basis);
  rep.min_eig_phi = sym_min_eigenvalue(phi.entries.real());

  const double scale_s = S.cwiseAbs().rowwise().sum().maxCoeff();
  const double scale_p = phi.entries.real().cwiseAbs().rowwise().sum().maxCoeff();
  rep.passed = rep.min_eig_schur >= -psd_tolerance(scale_s) &&
               rep.min_eig_phi >= -psd_tolerance(scale_p);
  return rep;
}

CsChainResult cs_chain_test(const Eigen::VectorXd& g, const AffineFunction& f,
                            const GradedBasis& basis) {
  const double beta = f.beta();
  if (beta == 0.0) throw std::domain_error("cs_chain_test: beta = 0, chain undefined");
  if (!is_admissible(f))
    throw std::domain_error("cs_chain_test: f is not nonnegative on the closed ball");
  if (g.size() != basis.dim()) throw UsageError("cs_chain_test: coefficient size mismatch");

  CsChainResult r;
  r.lhs = g(0) * g(0);  // <g, 1> is the constant coordinate
  const double quad = g.dot(affine_mult_matrix(basis, f) * g) / std::abs(beta);
  const double integral = std::abs(beta) * inverse_linear_integral(f.alpha, f.omega.norm());
  r.rhs = quad * integral;
  r.holds = r.lhs <= r.rhs + 1e-10 * std::max(1.0, std::abs(r.rhs));
  return r;
}

Eigen::Matrix4d rotate_to_axis(const Eigen::Vector4d& omega) {
  const double n = omega.norm();
  if (!(n > 0.0)) throw std::domain_error("rotate_to_axis: zero vector");
  // Householder, branch chosen to avoid cancellation near +-e1
  Eigen::Vector4d target = Eigen::Vector4d::Zero();
  double sign = 1.0;
  if (omega(0) <= 0.0) {
    target(0) = n;
  } else {
    target(0) = -n;
    sign = -1.0;
  }
  const Eigen::Vector4d v = omega - target;
  const double vsq = v.squaredNorm();  // >= 2n^2 by the branch choice
  const Eigen::Matrix4d H =
      Eigen::Matrix4d::Identity() - (2.0 / vsq) * (v * v.transpose());
  return sign * H;
}

double limiting_threshold(const AffineFunction& f) {
  const double beta = f.beta();
  if (beta == 0.0) return std::numeric_limits<double>::infinity();
  const double integral = inverse_linear_integral(f.alpha, f.omega.norm());
  return std::sqrt(f.alpha / (beta * beta * integral));
}

namespace {

// minimum eigenvalue of diag(lambda) - tau v v^T via the secular equation
double rank_one_min_eig(const Eigen::VectorXd& lambda, const Eigen::VectorXd& v, double tau) {
  const double l0 = lambda(0);
  if (tau <= 0.0) return l0;
  auto secular = [&](double mu) {
    double s = 0.0;
    for (int i = 0; i < lambda.size(); ++i) s += v(i) * v(i) / (lambda(i) - mu);
    return 1.0 - tau * s;
  };
  double hi = l0 - 1e-18 * std::max(1.0, std::abs(l0));
  if (secular(hi) > 0.0) return l0;  // update invisible to the ground space
  double lo = l0 - tau * v.squaredNorm() - 1e-12;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (secular(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ThresholdResult threshold_bisection(const AffineFunction& f, const GradedBasis& basis,
                                    double c_lo, double c_hi, double tol_c) {
  if (!is_admissible(f))
    throw std::domain_error("threshold_bisection: f is not nonnegative on the closed ball");
  if (!(0.0 < c_lo && c_lo < c_hi) || !(tol_c > 0.0))
    throw UsageError("threshold_bisection: need 0 < c_lo < c_hi and tol_c > 0");

  ThresholdResult res;
  res.degree = basis.degree_cap;
  res.c_lo = c_lo;
  res.c_hi = c_hi;
  res.tol_c = tol_c;
  res.limit = limiting_threshold(f);

  const double beta = f.beta();
  if (beta == 0.0) {  // rank-one term absent, nothing constrains c
    res.c_star = c_hi;
    return res;
  }

  const Eigen::MatrixXd W = f.alpha * affine_mult_matrix(basis, f);
  const SymEigen es = sym_eigen(W);
  const Eigen::VectorXd v = es.vectors.row(0).transpose();  // constant coordinate

  auto min_eig = [&](double c) {
    return rank_one_min_eig(es.values, v, c * c * beta * beta);
  };

  res.min_eig_lo = min_eig(c_lo);
  res.min_eig_hi = min_eig(c_hi);
  res.evaluations = 2;
  const double scale = W.cwiseAbs().rowwise().sum().maxCoeff();
  if (res.min_eig_lo < -psd_tolerance(scale) || res.min_eig_hi >= -psd_tolerance(scale))
    throw UsageError("threshold_bisection: bracket does not straddle the sign change "
                     "(min eig at c_lo = " + std::to_string(res.min_eig_lo) +
                     ", at c_hi = " + std::to_string(res.min_eig_hi) + ")");

  double lo = c_lo, hi = c_hi;
  while (hi - lo > tol_c) {
    const double mid = 0.5 * (lo + hi);
    ++res.evaluations;
    (min_eig(mid) >= -psd_tolerance(scale) ? lo : hi) = mid;
  }
  res.c_star = lo;
  return res;
}

AffineFunction random_admissible(SplitMix& rng) {
  AffineFunction f;
  f.alpha = rng.uniform(0.2, 2.0);
  const double u = rng.uniform();
  Eigen::Vector4d dir;
  for (int i = 0; i < 4; ++i) dir(i) = rng.gaussian();
  f.omega = (u * f.alpha / dir.norm()) * dir;
  return f;
}

}  // namespace jnr
