#pragma once

#include <Eigen/Dense>
#include <array>
#include <memory>
#include <vector>

#include "jnr/affine.hpp"
#include "jnr/moments.hpp"
#include "jnr/numeric.hpp"

namespace jnr {

inline constexpr int kMaxDegree = 16;

using QuadMatrix = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;

// Monomials with matching exponent parities. The exact Gram matrix is block
// diagonal across these classes (odd moments vanish), which is what keeps the
// orthonormalization tractable at high degree.
struct ParityBlock {
  std::array<int, 4> parity{};
  std::vector<int> indices;  // global monomial indices, in global order
  QuadMatrix coeff;          // within-class monomial coefficients, one column per function
};

struct MultMatrix {
  int index = 0;  // coordinate, 1-based
  Eigen::MatrixXd entries;
};

// Orthonormal graded polynomial basis of degree <= N on the sphere.
// Monomials carry t4-exponent <= 1 (a spanning set modulo the sphere
// relation); the j-th basis function is a combination of monomials of degree
// <= degree(monomial j), with the constant function first.
class GradedBasis {
 public:
  int degree_cap = 0;
  std::vector<MomentKey> monomials;   // ordered by (degree, reverse-lex)
  std::vector<int> grade_offsets;     // size degree_cap+2; [k, k+1) spans grade k
  std::vector<ParityBlock> blocks;
  double gram_residual = 0.0;         // max-norm of coeff^T G coeff - I, quad-verified

  int dim() const { return static_cast<int>(monomials.size()); }
  int grade_of(int j) const;

  // dense double view of the monomial-to-basis coefficient matrix
  Eigen::MatrixXd coeffs() const;

  // matrix of compressed multiplication by t_i (1-based), entries
  // <t_i phi_j, phi_k> from exact moments; assembled lazily and cached
  const Eigen::MatrixXd& mult(int i) const;

  // coordinates of the monomial `key` (degree <= degree_cap) in this basis
  Eigen::VectorXd monomial_coords(const MomentKey& key) const;

 private:
  mutable std::array<std::shared_ptr<const Eigen::MatrixXd>, 4> mult_cache_;
  friend GradedBasis build_basis(int);
};

// Builds the basis by graded Gram-Schmidt (one full reorthogonalization pass)
// through the exact rational Gram matrix, carried out per parity class in
// float128. Throws UsageError for N outside [0, kMaxDegree] and
// NumericalError if the verified Gram residual exceeds 1e-10.
GradedBasis build_basis(int N);

// process-wide cache; the basis is immutable and safely shared across threads
std::shared_ptr<const GradedBasis> shared_basis(int N);

MultMatrix mult_matrix(const GradedBasis& basis, int i);

// alpha*I + sum_i omega_i * mult(i); symmetric
Eigen::MatrixXd affine_mult_matrix(const GradedBasis& basis, const AffineFunction& f);

}  // namespace jnr
