#include "jnr/basis.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "jnr/errors.hpp"

namespace jnr {

namespace {

std::vector<MomentKey> enumerate_monomials(int N) {
  std::vector<MomentKey> mons;
  for (int k = 0; k <= N; ++k) {
    std::vector<MomentKey> deg;
    for (int a4 = 0; a4 <= std::min(1, k); ++a4)
      for (int a1 = 0; a1 <= k - a4; ++a1)
        for (int a2 = 0; a2 <= k - a4 - a1; ++a2)
          deg.push_back({{a1, a2, k - a4 - a1 - a2, a4}});
    std::sort(deg.begin(), deg.end(),
              [](const MomentKey& a, const MomentKey& b) { return b.exponents < a.exponents; });
    mons.insert(mons.end(), deg.begin(), deg.end());
  }
  return mons;
}

std::array<int, 4> parity_of(const MomentKey& m) {
  return {m.exponents[0] & 1, m.exponents[1] & 1, m.exponents[2] & 1, m.exponents[3] & 1};
}

MomentKey key_sum(const MomentKey& a, const MomentKey& b) {
  return {{a.exponents[0] + b.exponents[0], a.exponents[1] + b.exponents[1],
           a.exponents[2] + b.exponents[2], a.exponents[3] + b.exponents[3]}};
}

QuadMatrix class_gram(const std::vector<MomentKey>& mons, const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  QuadMatrix G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const Quad v = reduced_moment_q(key_sum(mons[idx[i]], mons[idx[j]]));
      G(i, j) = v;
      G(j, i) = v;
    }
  return G;
}

}  // namespace

int GradedBasis::grade_of(int j) const { return monomials[j].degree(); }

Eigen::MatrixXd GradedBasis::coeffs() const {
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(dim(), dim());
  for (const auto& bl : blocks) {
    const int n = static_cast<int>(bl.indices.size());
    for (int p = 0; p < n; ++p)
      for (int j = 0; j < n; ++j)
        C(bl.indices[p], bl.indices[j]) = to_double(bl.coeff(p, j));
  }
  return C;
}

GradedBasis build_basis(int N) {
  if (N < 0 || N > kMaxDegree)
    throw UsageError("build_basis: degree must be in [0, " + std::to_string(kMaxDegree) + "]");

  GradedBasis basis;
  basis.degree_cap = N;
  basis.monomials = enumerate_monomials(N);

  basis.grade_offsets.assign(N + 2, 0);
  for (const auto& m : basis.monomials) ++basis.grade_offsets[m.degree() + 1];
  for (int k = 0; k <= N; ++k) basis.grade_offsets[k + 1] += basis.grade_offsets[k];

  std::map<std::array<int, 4>, std::vector<int>> classes;
  for (int i = 0; i < basis.dim(); ++i)
    classes[parity_of(basis.monomials[i])].push_back(i);

  Quad worst_residual = 0;
  for (const auto& [parity, idx] : classes) {
    const int n = static_cast<int>(idx.size());
    const QuadMatrix G = class_gram(basis.monomials, idx);

    // classical Gram-Schmidt with one full reorthogonalization pass, in the
    // exact inner product <u, v> = u^T G v
    QuadMatrix B = QuadMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
      Eigen::Matrix<Quad, Eigen::Dynamic, 1> c = Eigen::Matrix<Quad, Eigen::Dynamic, 1>::Zero(n);
      c(j) = 1;
      for (int pass = 0; pass < 2 && j > 0; ++pass)
        c -= B.leftCols(j) * (B.leftCols(j).transpose() * (G * c));
      const Quad nsq = c.dot(G * c);
      if (!(nsq > 0))
        throw NumericalError("build_basis: orthonormalization broke down at grade " +
                             std::to_string(basis.monomials[idx[j]].degree()));
      B.col(j) = c / sqrt(nsq);
    }

    const QuadMatrix R = B.transpose() * (G * B) - QuadMatrix::Identity(n, n);
    Quad res = 0;
    int res_col = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (abs(R(i, j)) > res) {
          res = abs(R(i, j));
          res_col = j;
        }
    if (res > Quad(1e-10))
      throw NumericalError(
          "build_basis: Gram residual " + std::to_string(to_double(res)) +
          " exceeds 1e-10 at grade " +
          std::to_string(basis.monomials[idx[res_col]].degree()));
    if (res > worst_residual) worst_residual = res;

    ParityBlock bl;
    bl.parity = parity;
    bl.indices = idx;
    bl.coeff = std::move(B);
    basis.blocks.push_back(std::move(bl));
  }
  basis.gram_residual = to_double(worst_residual);
  return basis;
}

std::shared_ptr<const GradedBasis> shared_basis(int N) {
  static std::map<int, std::shared_ptr<const GradedBasis>> cache;
  static std::mutex mtx;
  std::lock_guard lock(mtx);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  auto basis = std::make_shared<const GradedBasis>(build_basis(N));
  cache.emplace(N, basis);
  return basis;
}

const Eigen::MatrixXd& GradedBasis::mult(int i) const {
  if (i < 1 || i > 4) throw UsageError("mult: coordinate index must be in {1,2,3,4}");
  static std::mutex mtx;
  std::lock_guard lock(mtx);
  if (mult_cache_[i - 1]) return *mult_cache_[i - 1];

  MomentKey shift;
  shift.exponents[i - 1] = 1;
  auto M = std::make_shared<Eigen::MatrixXd>(Eigen::MatrixXd::Zero(dim(), dim()));
  for (std::size_t a = 0; a < blocks.size(); ++a)
    for (std::size_t b = a + 1; b < blocks.size(); ++b) {
      auto flipped = blocks[a].parity;
      flipped[i - 1] ^= 1;
      if (flipped != blocks[b].parity) continue;

      const int na = static_cast<int>(blocks[a].indices.size());
      const int nb = static_cast<int>(blocks[b].indices.size());
      QuadMatrix Abl(na, nb);
      for (int p = 0; p < na; ++p)
        for (int q = 0; q < nb; ++q)
          Abl(p, q) = reduced_moment_q(key_sum(
              key_sum(monomials[blocks[a].indices[p]], monomials[blocks[b].indices[q]]), shift));

      const QuadMatrix R = blocks[a].coeff.transpose() * (Abl * blocks[b].coeff);
      for (int p = 0; p < na; ++p)
        for (int q = 0; q < nb; ++q) {
          const double v = to_double(R(p, q));
          (*M)(blocks[a].indices[p], blocks[b].indices[q]) = v;
          (*M)(blocks[b].indices[q], blocks[a].indices[p]) = v;
        }
    }
  mult_cache_[i - 1] = M;
  return *M;
}

Eigen::VectorXd GradedBasis::monomial_coords(const MomentKey& key) const {
  if (key.degree() > degree_cap)
    throw UsageError("monomial_coords: monomial degree exceeds the basis cap");
  // only the matching parity class contributes (odd moments vanish)
  const auto parity = parity_of(key);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim());
  for (const auto& bl : blocks) {
    if (bl.parity != parity) continue;
    const int n = static_cast<int>(bl.indices.size());
    Eigen::Matrix<Quad, Eigen::Dynamic, 1> rhs(n);
    for (int p = 0; p < n; ++p)
      rhs(p) = reduced_moment_q(key_sum(monomials[bl.indices[p]], key));
    const Eigen::Matrix<Quad, Eigen::Dynamic, 1> coords = bl.coeff.transpose() * rhs;
    for (int j = 0; j < n; ++j) v(bl.indices[j]) = to_double(coords(j));
  }
  return v;
}

MultMatrix mult_matrix(const GradedBasis& basis, int i) {
  return MultMatrix{i, basis.mult(i)};
}

Eigen::MatrixXd affine_mult_matrix(const GradedBasis& basis, const AffineFunction& f) {
  Eigen::MatrixXd M =
      f.alpha * Eigen::MatrixXd::Identity(basis.dim(), basis.dim());
  for (int i = 0; i < 4; ++i)
    if (f.omega[i] != 0.0) M += f.omega[i] * basis.mult(i + 1);
  return M;
}

}  // namespace jnr
