#include "jnr/operators.hpp"

#include <cstdio>
#include <ostream>

#include "jnr/eig.hpp"
#include "jnr/errors.hpp"

namespace jnr {

namespace {

TruncatedOperator make_operator(const GradedBasis& basis, Eigen::MatrixXcd entries,
                                std::string label, bool hermitian = true) {
  TruncatedOperator op;
  op.entries = std::move(entries);
  op.degree_cap = basis.degree_cap;
  op.grade_offsets = basis.grade_offsets;
  op.label = std::move(label);
  op.hermitian = hermitian;
  return op;
}

Eigen::MatrixXcd embed(const Eigen::MatrixXd& block) {
  const int n = static_cast<int>(block.rows());
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  M.topLeftCorner(n, n) = block.cast<std::complex<double>>();
  return M;
}

}  // namespace

bool OperatorTuple::all_real() const {
  for (const auto& op : operators)
    if (!op.is_real()) return false;
  return true;
}

OperatorTuple build_tuple(const GradedBasis& basis, TupleVariant variant, double c) {
  if (variant != TupleVariant::Plain && !(c > 0.0))
    throw UsageError("build_tuple: coupling constant must be positive");
  const int n = basis.dim();
  OperatorTuple tuple;

  auto plain = [&](int i) {
    return make_operator(basis, embed(basis.mult(i)), "T" + std::to_string(i));
  };

  switch (variant) {
    case TupleVariant::Plain:
      for (int i = 1; i <= 4; ++i) tuple.operators.push_back(plain(i));
      break;
    case TupleVariant::Coupled: {
      Eigen::MatrixXcd M = embed(basis.mult(1));
      M(0, n) = c;  // the constant function is the first basis element
      M(n, 0) = c;
      tuple.operators.push_back(make_operator(basis, std::move(M), "T1c"));
      for (int i = 2; i <= 4; ++i) tuple.operators.push_back(plain(i));
      break;
    }
    case TupleVariant::Tilde: {
      auto [re, im] = hermitian_parts(one_sided_coupling(basis, c));
      re.label = "ReT1c";
      im.label = "ImT1c";
      tuple.operators.push_back(std::move(re));
      tuple.operators.push_back(std::move(im));
      for (int i = 2; i <= 4; ++i) tuple.operators.push_back(plain(i));
      break;
    }
  }
  return tuple;
}

TruncatedOperator one_sided_coupling(const GradedBasis& basis, double c) {
  if (!(c > 0.0)) throw UsageError("one_sided_coupling: coupling constant must be positive");
  const int n = basis.dim();
  Eigen::MatrixXcd M = embed(basis.mult(1));
  M(0, n) = c;
  return make_operator(basis, std::move(M), "T1c_tilde", /*hermitian=*/false);
}

std::pair<TruncatedOperator, TruncatedOperator> hermitian_parts(const TruncatedOperator& A) {
  TruncatedOperator re = A;
  TruncatedOperator im = A;
  re.entries = 0.5 * (A.entries + A.entries.adjoint());
  im.entries = std::complex<double>(0.0, -0.5) * (A.entries - A.entries.adjoint());
  re.hermitian = im.hermitian = true;
  re.label = "Re(" + A.label + ")";
  im.label = "Im(" + A.label + ")";
  return {std::move(re), std::move(im)};
}

double op_norm(const TruncatedOperator& A) {
  if (A.hermitian) {
    const Eigen::VectorXd w = herm_eigenvalues(A.entries);
    return std::max(std::abs(w(0)), std::abs(w(w.size() - 1)));
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(A.entries);
  return svd.singularValues()(0);
}

TruncatedOperator compress_to_degree(const TruncatedOperator& A, int k) {
  if (k < 0 || k > A.degree_cap)
    throw UsageError("compress_to_degree: grade out of range");
  TruncatedOperator B = A;
  const int keep = A.grade_offsets[k + 1];  // grades <= k
  const int n = A.l2_dim();
  // zero rows/columns of grades above k; the extra coordinate survives
  B.entries.block(keep, 0, n - keep, A.dim()).setZero();
  B.entries.block(0, keep, A.dim(), n - keep).setZero();
  return B;
}

void dump_matrix(std::ostream& os, const TruncatedOperator& A) {
  const int n = A.dim();
  os << n << " " << n << "\n";
  char buf[64];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g", A.entries(i, j).real(),
                    A.entries(i, j).imag());
      os << buf << (j + 1 < n ? "  " : "");
    }
    os << "\n";
  }
}

}  // namespace jnr
