#include "jnr/identities.hpp"

#include <cmath>

#include "jnr/eig.hpp"
#include "jnr/errors.hpp"
#include "jnr/operators.hpp"

namespace jnr {

namespace {

Eigen::MatrixXd embed(const Eigen::MatrixXd& block) {
  const int n = static_cast<int>(block.rows());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = block;
  return M;
}

// zero out grades above k (the extra coordinate stays)
Eigen::MatrixXd restrict_low(const Eigen::MatrixXd& M, const GradedBasis& basis, int k) {
  const int n = basis.dim();
  const int keep = basis.grade_offsets[k + 1];
  Eigen::MatrixXd R = M;
  R.block(keep, 0, n - keep, n + 1).setZero();
  R.block(0, keep, n + 1, n - keep).setZero();
  return R;
}

IdentityReport compare_restricted(std::string name, const Eigen::MatrixXd& built,
                                  const Eigen::MatrixXd& target, const GradedBasis& basis,
                                  int grade) {
  const Eigen::MatrixXd diff =
      restrict_low(built, basis, grade) - restrict_low(target, basis, grade);
  IdentityReport rep;
  rep.identity_name = std::move(name);
  rep.residual = diff.cwiseAbs().maxCoeff();
  rep.grade_used = grade;
  const double scale = restrict_low(target, basis, grade).cwiseAbs().maxCoeff();
  rep.passed = rep.residual <= 1e-12 * (1.0 + scale);
  return rep;
}

struct ModelMatrices {
  Eigen::MatrixXd tilde;           // one-sided coupling
  Eigen::MatrixXd defect;          // tilde tilde^T + sum_{i>=2} T_i^T T_i - 1
  Eigen::MatrixXd corner_proj;     // target 0 + PP*: unit in the extra corner
  Eigen::MatrixXd const_proj;      // target P*P + 0: unit on the constant coordinate
  Eigen::MatrixXd l2_identity;     // target id + 0
  Eigen::MatrixXd mult1;           // target M_{t1} + 0
  std::vector<Eigen::MatrixXd> plain;  // T_1..T_4 embedded
};

ModelMatrices assemble(double c, const GradedBasis& basis) {
  if (!(c > 0.0)) throw UsageError("identity checks need a positive coupling constant");
  if (basis.degree_cap < 1) throw UsageError("identity checks need degree >= 1");
  const int n = basis.dim();
  ModelMatrices m;
  m.plain.reserve(4);
  for (int i = 1; i <= 4; ++i) m.plain.push_back(embed(basis.mult(i)));
  m.tilde = m.plain[0];
  m.tilde(0, n) = c;

  m.defect = m.tilde * m.tilde.transpose() - Eigen::MatrixXd::Identity(n + 1, n + 1);
  for (int i = 1; i < 4; ++i) m.defect += m.plain[i].transpose() * m.plain[i];

  m.corner_proj = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.corner_proj(n, n) = 1.0;
  m.const_proj = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.const_proj(0, 0) = 1.0;
  m.l2_identity = Eigen::MatrixXd::Identity(n + 1, n + 1);
  m.l2_identity(n, n) = 0.0;
  m.mult1 = m.plain[0];
  return m;
}

}  // namespace

IdentityReport defect_check(double c, const GradedBasis& basis) {
  const ModelMatrices m = assemble(c, basis);
  const Eigen::MatrixXd target = c * c * m.const_proj - m.corner_proj;
  return compare_restricted("defect", m.defect, target, basis, basis.degree_cap - 1);
}

std::vector<IdentityReport> identity_chain(double c, const GradedBasis& basis) {
  const ModelMatrices m = assemble(c, basis);
  const int n = basis.dim();
  const int grade = basis.degree_cap - 1;
  std::vector<IdentityReport> reports;

  // the defect is block diagonal across the grading, so its restricted square
  // equals the square of its restriction
  const double ci = 1.0 / (c * c);
  const Eigen::MatrixXd corner_built = (ci * (m.defect * m.defect) - m.defect) / (ci + 1.0);
  reports.push_back(
      compare_restricted("corner_projection", corner_built, m.corner_proj, basis, grade));

  const Eigen::MatrixXd l2_built =
      Eigen::MatrixXd::Identity(n + 1, n + 1) - corner_built;
  reports.push_back(compare_restricted("l2_identity", l2_built, m.l2_identity, basis, grade));

  const Eigen::MatrixXd const_proj_built = ci * (l2_built * m.defect);
  reports.push_back(
      compare_restricted("constant_projection", const_proj_built, m.const_proj, basis, grade));

  const Eigen::MatrixXd mult1_built = m.tilde * l2_built;
  reports.push_back(compare_restricted("mult_block", mult1_built, m.mult1, basis, grade));

  // adjoint defect: the corner row scaled by the coupling constant
  Eigen::MatrixXd corner_row = Eigen::MatrixXd::Zero(n + 1, n + 1);
  corner_row(n, 0) = c;
  const Eigen::MatrixXd corner_row_built = m.tilde.transpose() - m.mult1;
  reports.push_back(
      compare_restricted("corner_row", corner_row_built, corner_row, basis, grade));
  return reports;
}

IdentityReport rank_one_generation(const MomentKey& p, const MomentKey& q, double c,
                                   const GradedBasis& basis) {
  if (p.degree() > basis.degree_cap || q.degree() > basis.degree_cap)
    throw UsageError("rank_one_generation: monomial degree exceeds the basis cap");
  const ModelMatrices m = assemble(c, basis);
  const int n = basis.dim();

  auto mult_product = [&](const MomentKey& key) {
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(n + 1, n + 1);
    for (int i = 0; i < 4; ++i)
      for (int e = 0; e < key.exponents[i]; ++e) P = m.plain[i] * P;
    return P;
  };
  const Eigen::MatrixXd Mp = mult_product(p);
  const Eigen::MatrixXd Mq = mult_product(q);

  // p <.,q> in the L^2 block
  const Eigen::MatrixXd built_block = Mp * m.const_proj * Mq;
  Eigen::VectorXd pc = Eigen::VectorXd::Zero(n + 1);
  pc.head(n) = basis.monomial_coords(p);
  Eigen::VectorXd qc = Eigen::VectorXd::Zero(n + 1);
  qc.head(n) = basis.monomial_coords(q);
  const Eigen::MatrixXd target_block = pc * qc.transpose();

  // <.,q> in the corner row, extracted as (tilde^T - M1)/c times the q factors
  const Eigen::MatrixXd built_row = ((m.tilde.transpose() - m.mult1) / c) * Mq;
  Eigen::MatrixXd target_row = Eigen::MatrixXd::Zero(n + 1, n + 1);
  target_row.row(n) = qc.transpose();

  IdentityReport rep;
  rep.identity_name = "rank_one";
  rep.grade_used = basis.degree_cap;
  const double r1 = (built_block - target_block).cwiseAbs().maxCoeff();
  const double r2 = (built_row - target_row).cwiseAbs().maxCoeff();
  rep.residual = std::max(r1, r2);
  const double scale =
      std::max(target_block.cwiseAbs().maxCoeff(), target_row.cwiseAbs().maxCoeff());
  rep.passed = rep.residual <= 1e-12 * (1.0 + scale);
  return rep;
}

RankOneSuite rank_one_suite(double c, const GradedBasis& basis, int max_degree) {
  if (max_degree < 0 || max_degree > basis.degree_cap)
    throw UsageError("rank_one_suite: degree out of range");
  if (!(c > 0.0)) throw UsageError("rank_one_suite: coupling constant must be positive");
  const int n = basis.dim();
  const int count = basis.grade_offsets[max_degree + 1];

  // product of multiplication blocks applied to the constant function, and the
  // independent coordinates from exact moments
  std::vector<Eigen::VectorXd> built(count), coords(count);
  for (int j = 0; j < count; ++j) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v(0) = 1.0;
    const MomentKey& key = basis.monomials[j];
    for (int i = 0; i < 4; ++i)
      for (int e = 0; e < key.exponents[i]; ++e) v = basis.mult(i + 1) * v;
    built[j] = v;
    coords[j] = basis.monomial_coords(key);
  }

  RankOneSuite suite;
  suite.pq_degree = max_degree;
  suite.pairs = count * count;
  for (int p = 0; p < count; ++p)
    for (int q = 0; q < count; ++q) {
      double r = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          r = std::max(r, std::abs(built[p](i) * built[q](j) - coords[p](i) * coords[q](j)));
      r = std::max(r, (built[q] - coords[q]).cwiseAbs().maxCoeff());
      suite.max_residual = std::max(suite.max_residual, r);
    }
  suite.all_passed = suite.max_residual <= 1e-12 * 2.0;
  return suite;
}

BoundaryNorms boundary_norms(double c, const GradedBasis& basis) {
  const ModelMatrices m = assemble(c, basis);
  const int n = basis.dim();
  BoundaryNorms b;

  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (const auto& T : m.plain) sum_sq += T.transpose() * T;
  const Eigen::MatrixXd restricted = restrict_low(sum_sq, basis, basis.degree_cap - 1);
  Eigen::VectorXd w = sym_eigenvalues(restricted);
  b.norm_plain = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));

  Eigen::MatrixXd tilde_sq = m.tilde.transpose() * m.tilde;
  for (int i = 1; i < 4; ++i) tilde_sq += m.plain[i].transpose() * m.plain[i];
  w = sym_eigenvalues(tilde_sq);
  b.norm_tilde = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));

  Eigen::MatrixXd herm = m.plain[0];
  herm(0, n) = herm(n, 0) = c;
  Eigen::MatrixXd herm_sq = herm.transpose() * herm;
  for (int i = 1; i < 4; ++i) herm_sq += m.plain[i].transpose() * m.plain[i];
  w = sym_eigenvalues(herm_sq);
  b.norm_hermitian = std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
  return b;
}

double boundary_norm_tilde_closed_form(double c) {
  return 0.5 * (1.0 + c * c + std::sqrt(1.0 - c * c + c * c * c * c));
}

double boundary_norm_hermitian_closed_form(double c) { return 1.0 + c * c; }

}  // namespace jnr
