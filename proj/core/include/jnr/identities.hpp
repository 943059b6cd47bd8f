#pragma once

#include <string>
#include <vector>

#include "jnr/basis.hpp"
#include "jnr/moments.hpp"

namespace jnr {

struct IdentityReport {
  std::string identity_name;
  double residual = 0.0;  // max-norm of the restricted difference
  int grade_used = 0;
  bool passed = false;
};

// The defect T~ T~* + sum_{i>=2} T_i* T_i - 1 equals diag(c^2 Q, -1) on
// grades <= N-1 plus the extra coordinate (Q = projection onto constants).
IdentityReport defect_check(double c, const GradedBasis& basis);

// The five-step chain extracting projections, the multiplication block and
// the corner row from the defect; each side built from the truncated model,
// compared after compression to grades <= N-1 plus the extra coordinate.
std::vector<IdentityReport> identity_chain(double c, const GradedBasis& basis);

// Sandwiching the constant-function projection (resp. the corner row) between
// multiplication operators yields the rank-one p<.,q> (resp. the row <.,q>);
// exact whenever deg p, deg q <= N.
IdentityReport rank_one_generation(const MomentKey& p, const MomentKey& q, double c,
                                   const GradedBasis& basis);

// All pairs p, q of monomials up to max_degree at once, sharing one model
// assembly and going through the equivalent outer-product form.
struct RankOneSuite {
  int pq_degree = 0;
  int pairs = 0;
  double max_residual = 0.0;
  bool all_passed = false;
};
RankOneSuite rank_one_suite(double c, const GradedBasis& basis, int max_degree);

struct BoundaryNorms {
  double norm_plain = 0.0;      // restricted sum of squares; equals 1
  double norm_tilde = 0.0;      // with the one-sided coupling, full truncation
  double norm_hermitian = 0.0;  // with the symmetric coupling, full truncation
};

BoundaryNorms boundary_norms(double c, const GradedBasis& basis);

// closed forms of the coupled norms (valid for N >= 2):
// (1 + c^2 + sqrt(1 - c^2 + c^4)) / 2 and 1 + c^2
double boundary_norm_tilde_closed_form(double c);
double boundary_norm_hermitian_closed_form(double c);

}  // namespace jnr
