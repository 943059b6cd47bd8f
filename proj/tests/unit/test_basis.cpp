#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "jnr/basis.hpp"
#include "jnr/eig.hpp"
#include "jnr/errors.hpp"

using namespace jnr;

namespace {

// independent monomial count: tuples with t4-exponent <= 1 and degree <= N
int brute_force_dimension(int N) {
  int count = 0;
  for (int a1 = 0; a1 <= N; ++a1)
    for (int a2 = 0; a2 <= N; ++a2)
      for (int a3 = 0; a3 <= N; ++a3)
        for (int a4 = 0; a4 <= 1; ++a4)
          if (a1 + a2 + a3 + a4 <= N) ++count;
  return count;
}

}  // namespace

TEST_CASE("dimension formula") {
  CHECK(build_basis(0).dim() == 1);
  CHECK(build_basis(1).dim() == 5);
  CHECK(build_basis(2).dim() == 14);
  for (int N = 0; N <= 8; ++N) {
    const auto basis = shared_basis(N);
    CHECK(basis->dim() == (N + 1) * (N + 2) * (2 * N + 3) / 6);
    CHECK(basis->dim() == brute_force_dimension(N));
    CHECK(basis->grade_offsets.back() == basis->dim());
    for (int k = 0; k <= N; ++k)
      CHECK(basis->grade_offsets[k + 1] - basis->grade_offsets[k] == (k + 1) * (k + 1));
  }
}

TEST_CASE("degree cap and invalid arguments") {
  CHECK_THROWS_AS(build_basis(kMaxDegree + 1), UsageError);
  CHECK_THROWS_AS(build_basis(-1), UsageError);
}

TEST_CASE("first basis element is the constant function") {
  const auto basis = shared_basis(4);
  const Eigen::MatrixXd C = basis->coeffs();
  CHECK(basis->monomials[0].degree() == 0);
  CHECK(C(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(C.col(0).tail(basis->dim() - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("basis functions are graded: no coefficients above their own degree") {
  const auto basis = shared_basis(5);
  const Eigen::MatrixXd C = basis->coeffs();
  for (int j = 0; j < basis->dim(); ++j)
    for (int r = 0; r < basis->dim(); ++r)
      if (basis->monomials[r].degree() > basis->grade_of(j)) CHECK(C(r, j) == 0.0);
}

TEST_CASE("gram residual: reported and independently recomputed") {
  const auto basis = shared_basis(6);
  CHECK(basis->gram_residual <= 1e-10);

  // independent check in double at modest degree, Gram from exact moments
  const auto small = shared_basis(4);
  const Eigen::MatrixXd C = small->coeffs();
  const int n = small->dim();
  Eigen::MatrixXd G(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      MomentKey k;
      for (int i = 0; i < 4; ++i)
        k.exponents[i] = small->monomials[p].exponents[i] + small->monomials[q].exponents[i];
      G(p, q) = to_double(reduced_moment(k));
    }
  const Eigen::MatrixXd R = C.transpose() * G * C - Eigen::MatrixXd::Identity(n, n);
  CHECK(R.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("multiplication matrix at degree 1: hand values") {
  const auto basis = shared_basis(1);
  const MultMatrix m = mult_matrix(*basis, 1);
  CHECK(m.index == 1);
  const auto& M = m.entries;
  REQUIRE(M.rows() == 5);
  // monomial order within grade 1 puts t1 first
  CHECK(basis->monomials[1].exponents == std::array<int, 4>{1, 0, 0, 0});
  CHECK(M(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(M(1, 0) == doctest::Approx(0.5).epsilon(1e-15));
  double off = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (!((i == 0 && j == 1) || (i == 1 && j == 0))) off = std::max(off, std::abs(M(i, j)));
  CHECK(off == 0.0);
  Eigen::VectorXd v;
  CHECK(top_eigenpair_real(M, v) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("multiplication matrices are exactly symmetric") {
  const auto basis = shared_basis(3);
  for (int i = 1; i <= 4; ++i) {
    const Eigen::MatrixXd& M = basis->mult(i);
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("spectral norms: compressions of a contraction, Chebyshev closed form") {
  // the norm of the compressed multiplication by t_i equals cos(pi/(N+2)),
  // the top zero of the degree-(N+1) second-kind Chebyshev polynomial of the
  // pushforward Jacobi matrix
  double prev = 0.0;
  for (int N = 1; N <= 6; ++N) {
    const auto basis = shared_basis(N);
    Eigen::VectorXd v;
    const double norm = top_eigenpair_real(basis->mult(2), v);
    CHECK(norm < 1.0);
    CHECK(norm >= prev);
    CHECK(norm == doctest::Approx(std::cos(M_PI / (N + 2))).epsilon(1e-12));
    prev = norm;
  }
}

TEST_CASE("graded exactness: sum of squares is the identity below the cap") {
  const auto basis = shared_basis(5);
  const int low = basis->grade_offsets[5];  // grades <= 4
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(basis->dim(), basis->dim());
  for (int i = 1; i <= 4; ++i) S += basis->mult(i) * basis->mult(i);
  const Eigen::MatrixXd D =
      S.topLeftCorner(low, low) - Eigen::MatrixXd::Identity(low, low);
  CHECK(D.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("multiplication operators commute on safe grades") {
  const auto basis = shared_basis(4);
  const int low = basis->grade_offsets[3];  // grades <= N-2
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) {
      const Eigen::MatrixXd C =
          basis->mult(i) * basis->mult(j) - basis->mult(j) * basis->mult(i);
      CHECK(C.topLeftCorner(low, low).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("affine multiplication matrices") {
  const auto basis = shared_basis(1);
  AffineFunction one;
  one.alpha = 1.0;
  CHECK((affine_mult_matrix(*basis, one) - Eigen::MatrixXd::Identity(5, 5))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  AffineFunction f;
  f.alpha = 1.0;
  f.omega = Eigen::Vector4d(1, 0, 0, 0);
  const Eigen::VectorXd w = sym_eigenvalues(affine_mult_matrix(*basis, f));
  const double expect[5] = {0.5, 1.0, 1.0, 1.0, 1.5};
  for (int i = 0; i < 5; ++i) CHECK(w(i) == doctest::Approx(expect[i]).epsilon(1e-13));

  // linearity in the coefficients
  const auto b4 = shared_basis(4);
  AffineFunction g;
  g.alpha = 0.3;
  g.omega = Eigen::Vector4d(0.1, -0.4, 0.2, 0.7);
  AffineFunction h;
  h.alpha = -1.1;
  h.omega = Eigen::Vector4d(0.5, 0.25, -0.3, 0.0);
  AffineFunction sum;
  sum.alpha = g.alpha + h.alpha;
  sum.omega = g.omega + h.omega;
  const Eigen::MatrixXd lhs = affine_mult_matrix(*b4, sum);
  const Eigen::MatrixXd rhs = affine_mult_matrix(*b4, g) + affine_mult_matrix(*b4, h);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("monomial coordinates") {
  const auto basis = shared_basis(3);
  const Eigen::VectorXd c0 = basis->monomial_coords(MomentKey{{0, 0, 0, 0}});
  CHECK(c0(0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c0.tail(basis->dim() - 1).cwiseAbs().maxCoeff() < 1e-15);

  // t1 has norm 1/2, carried by the single grade-1 element aligned with it
  const Eigen::VectorXd c1 = basis->monomial_coords(MomentKey{{1, 0, 0, 0}});
  CHECK(c1(1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(c1.norm() == doctest::Approx(0.5).epsilon(1e-13));
  CHECK_THROWS_AS(basis->monomial_coords(MomentKey{{4, 0, 0, 0}}), UsageError);
}
