#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "jnr/basis.hpp"

namespace jnr {

// Dense operator on H_N + C (the truncated L^2 space plus one extra
// coordinate). The extra coordinate is the last row/column.
struct TruncatedOperator {
  Eigen::MatrixXcd entries;
  int degree_cap = 0;
  std::vector<int> grade_offsets;  // grading of the L^2 block
  std::string label;
  bool hermitian = true;

  int dim() const { return static_cast<int>(entries.rows()); }
  int l2_dim() const { return dim() - 1; }
  bool is_real() const { return entries.imag().isZero(0.0); }
};

struct OperatorTuple {
  std::vector<TruncatedOperator> operators;

  int arity() const { return static_cast<int>(operators.size()); }
  int dim() const { return operators.empty() ? 0 : operators.front().dim(); }
  bool all_real() const;
};

enum class TupleVariant { Plain, Coupled, Tilde };

// plain      -> (T1, T2, T3, T4), multiplication blocks with the extra
//               coordinate annihilated
// coupled(c) -> (T_{1,c}, T2, T3, T4), T_{1,c} couples the constant function
//               to the extra coordinate with strength c
// tilde(c)   -> (Re T1c~, Im T1c~, T2, T3, T4), the Hermitian parts of the
//               one-sided coupling
OperatorTuple build_tuple(const GradedBasis& basis, TupleVariant variant, double c = 0.0);

// The one-sided coupling itself: upper-right block c * (constant selector),
// zero lower row. Not Hermitian; stored with the hermitian flag cleared.
TruncatedOperator one_sided_coupling(const GradedBasis& basis, double c);

// Re = (A + A*)/2, Im = (A - A*)/(2i); A = Re + i Im reconstructs exactly.
std::pair<TruncatedOperator, TruncatedOperator> hermitian_parts(const TruncatedOperator& A);

// largest singular value
double op_norm(const TruncatedOperator& A);

// Pi_k A Pi_k where Pi_k keeps grades <= k plus the extra coordinate
TruncatedOperator compress_to_degree(const TruncatedOperator& A, int k);

// debugging dump: dimension header, then row-major "re im" pairs
void dump_matrix(std::ostream& os, const TruncatedOperator& A);

}  // namespace jnr
