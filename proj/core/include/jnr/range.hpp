#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "jnr/operators.hpp"

namespace jnr {

// unit vector in R^k, the dual direction probing the joint numerical range
struct Direction {
  Eigen::VectorXd components;
};

Direction make_direction(Eigen::VectorXd v);  // normalizes; rejects near-zero input

struct SupportSample {
  Direction direction;
  double value = 0.0;            // h(theta) = top eigenvalue of sum theta_i A_i
  Eigen::VectorXcd witness;      // corresponding unit eigenvector
};

struct RangeReport {
  double max_support = 0.0;
  Direction argmax_direction;
  double margin = 0.0;  // 1 - max_support
  std::int64_t samples = 0;
  std::int64_t refinement_steps = 0;
};

struct SweepRecord {
  Eigen::VectorXd theta;
  double h = 0.0;
};

SupportSample support_function(const OperatorTuple& tuple, const Direction& theta);

// Deterministic low-discrepancy directions on the unit sphere in R^k
// (Kronecker sequence mapped through the spherical-coordinate CDFs), with a
// seed-dependent toral shift. k in {1,...,5}.
std::vector<Eigen::VectorXd> sphere_directions(int k, std::int64_t count, std::uint64_t seed);

// Maximizes h over directions: low-discrepancy sweep of `budget` samples,
// then `refine` steps of theta <- normalize(z(witness)) from each of the top
// 10 samples. Ties break toward the lowest sample index. max_support <= 1
// certifies that the convex hull of the truncated range lies in the closed
// unit ball.
RangeReport sweep_max_support(const OperatorTuple& tuple, std::int64_t budget, int refine,
                              std::uint64_t seed, std::vector<SweepRecord>* log = nullptr,
                              const std::function<void(const SupportSample&)>& observer = {});

struct FpiResult {
  Eigen::VectorXcd witness;
  double norm_z = 0.0;
  int iterations = 0;
  bool stationary = false;       // z(x) vanished, direction undefined
  std::vector<double> trace;     // objective per iterate, nondecreasing
};

// x <- top eigenvector of sum_i zhat_i(x) A_i with z(x) = (<A_i x, x>)_i;
// ascends |z(x)| over unit vectors.
FpiResult farthest_point_iteration(const OperatorTuple& tuple, const Eigen::VectorXcd& x0,
                                   int max_iter, double tol);

struct CsAudit {
  double sum_sq = 0.0;    // sum_i <A_i x, x>^2
  double sum_quad = 0.0;  // sum_i <A_i^2 x, x>
};

CsAudit cs_audit(const OperatorTuple& tuple, const Eigen::VectorXcd& witness);

struct MarginReport {
  TupleVariant variant = TupleVariant::Plain;
  double c = 0.0;
  int degree = 0;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  RangeReport range;
  double worst_chain_gap = 0.0;    // max over samples of sum_sq - sum_quad
  double worst_quad_excess = 0.0;  // max over samples of sum_quad - 1
  double worst_sq_excess = 0.0;    // max over samples of sum_sq - 1
  std::int64_t audited = 0;
  bool pass = false;
};

// Builds the tuple for the requested variant and sweeps it, auditing every
// witness against the Cauchy-Schwarz chain. The coupled variant certifies
// c in (0, 1/2), the one-sided variant c in (0, 1); outside values need
// override_range (exploration).
MarginReport ball_margin_report(TupleVariant variant, double c, int degree,
                                std::int64_t budget, int refine, std::uint64_t seed,
                                double tol = 1e-9, bool override_range = false);

// CSV: header theta_1..theta_k,h,margin, one row per sample
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);

}  // namespace jnr
