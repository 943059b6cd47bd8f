#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "jnr/eig.hpp"
#include "jnr/errors.hpp"
#include "jnr/operators.hpp"

using namespace jnr;

TEST_CASE("tuple shapes and the extra coordinate") {
  const auto basis = shared_basis(3);
  const OperatorTuple plain = build_tuple(*basis, TupleVariant::Plain);
  REQUIRE(plain.arity() == 4);
  for (const auto& op : plain.operators) {
    CHECK(op.dim() == basis->dim() + 1);
    CHECK(op.hermitian);
    // the plain operators annihilate the extra coordinate
    CHECK(op.entries.row(op.dim() - 1).cwiseAbs().maxCoeff() == 0.0);
    CHECK(op.entries.col(op.dim() - 1).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(build_tuple(*basis, TupleVariant::Coupled, 0.3).arity() == 4);
  CHECK(build_tuple(*basis, TupleVariant::Tilde, 0.3).arity() == 5);
  CHECK_THROWS_AS(build_tuple(*basis, TupleVariant::Coupled, 0.0), UsageError);
  CHECK_THROWS_AS(build_tuple(*basis, TupleVariant::Tilde, -0.2), UsageError);
}

TEST_CASE("coupling block: the constant selector scaled by c") {
  const auto basis = shared_basis(2);
  const int n = basis->dim();
  const double c = 0.37;
  const auto tuple = build_tuple(*basis, TupleVariant::Coupled, c);
  const Eigen::MatrixXcd& T = tuple.operators[0].entries;
  CHECK(T(0, n) == std::complex<double>(c, 0.0));
  CHECK(T(n, 0) == std::complex<double>(c, 0.0));
  for (int i = 1; i < n; ++i) {
    CHECK(std::abs(T(i, n)) == 0.0);
    CHECK(std::abs(T(n, i)) == 0.0);
  }
  CHECK(std::abs(T(n, n)) == 0.0);
}

TEST_CASE("coupled tuple is affine in the coupling constant") {
  const auto basis = shared_basis(3);
  const auto plain = build_tuple(*basis, TupleVariant::Plain);
  const auto half = build_tuple(*basis, TupleVariant::Coupled, 0.5);
  for (double c : {0.1, 0.25, 0.49}) {
    const auto coupled = build_tuple(*basis, TupleVariant::Coupled, c);
    const Eigen::MatrixXcd expect = (1.0 - 2.0 * c) * plain.operators[0].entries +
                                    2.0 * c * half.operators[0].entries;
    CHECK((coupled.operators[0].entries - expect).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("hermitian parts of the one-sided coupling") {
  const auto basis = shared_basis(3);
  const double c = 0.8;
  const TruncatedOperator tilde = one_sided_coupling(*basis, c);
  CHECK_FALSE(tilde.hermitian);

  const auto [re, im] = hermitian_parts(tilde);
  // Re equals the symmetric coupling at c/2, exactly
  const auto halfc = build_tuple(*basis, TupleVariant::Coupled, c / 2.0);
  CHECK((re.entries - halfc.operators[0].entries).cwiseAbs().maxCoeff() == 0.0);

  // reconstruction
  const Eigen::MatrixXcd rebuilt =
      re.entries + std::complex<double>(0, 1) * im.entries;
  CHECK((rebuilt - tilde.entries).cwiseAbs().maxCoeff() < 1e-15);

  // Im carries exactly one +-c/2 pair
  const Eigen::VectorXd w = herm_eigenvalues(im.entries);
  CHECK(w(0) == doctest::Approx(-c / 2).epsilon(1e-14));
  CHECK(w(w.size() - 1) == doctest::Approx(c / 2).epsilon(1e-14));
  CHECK(std::abs(w(1)) < 1e-14);

  // a Hermitian input has vanishing imaginary part
  const auto [re2, im2] = hermitian_parts(halfc.operators[0]);
  CHECK(im2.entries.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("operator norms") {
  const auto basis = shared_basis(1);
  TruncatedOperator ident;
  ident.entries = Eigen::MatrixXcd::Identity(6, 6);
  ident.degree_cap = 1;
  ident.grade_offsets = basis->grade_offsets;
  CHECK(op_norm(ident) == doctest::Approx(1.0).epsilon(1e-14));

  const auto plain = build_tuple(*basis, TupleVariant::Plain);
  CHECK(op_norm(plain.operators[1]) == doctest::Approx(0.5).epsilon(1e-13));

  // coupling enlarges the top singular value
  const auto coupled = build_tuple(*basis, TupleVariant::Coupled, 0.3);
  CHECK(op_norm(coupled.operators[0]) > op_norm(plain.operators[0]) + 1e-3);

  // non-Hermitian path agrees with the singular value of the raw coupling
  const TruncatedOperator tilde = one_sided_coupling(*basis, 0.3);
  const Eigen::MatrixXcd prod = tilde.entries * tilde.entries.adjoint();
  const Eigen::VectorXd w = herm_eigenvalues(prod);
  CHECK(op_norm(tilde) == doctest::Approx(std::sqrt(w(w.size() - 1))).epsilon(1e-12));
}

TEST_CASE("compression to a grade") {
  const auto basis = shared_basis(4);
  const auto plain = build_tuple(*basis, TupleVariant::Plain);
  const auto& T2 = plain.operators[1];

  const TruncatedOperator full = compress_to_degree(T2, 4);
  CHECK((full.entries - T2.entries).cwiseAbs().maxCoeff() == 0.0);

  const TruncatedOperator once = compress_to_degree(T2, 2);
  const TruncatedOperator twice = compress_to_degree(once, 2);
  CHECK((once.entries - twice.entries).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(compress_to_degree(T2, 5), UsageError);
  CHECK_THROWS_AS(compress_to_degree(T2, -1), UsageError);

  // restricted sum of squares is diag(identity, 0)
  const int n = basis->dim();
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (const auto& op : plain.operators) {
    TruncatedOperator sq = op;
    sq.entries = op.entries.adjoint() * op.entries;
    sum += compress_to_degree(sq, 3).entries;
  }
  const int low = basis->grade_offsets[4];
  Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  target.topLeftCorner(low, low).setIdentity();
  CHECK((sum - target).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("matrix dump format") {
  const auto basis = shared_basis(1);
  const auto plain = build_tuple(*basis, TupleVariant::Plain);
  std::ostringstream os;
  dump_matrix(os, plain.operators[0]);
  std::istringstream is(os.str());
  int rows = 0, cols = 0;
  is >> rows >> cols;
  CHECK(rows == 6);
  CHECK(cols == 6);
  int tokens = 0;
  double v;
  while (is >> v) ++tokens;
  CHECK(tokens == 2 * 36);
}
