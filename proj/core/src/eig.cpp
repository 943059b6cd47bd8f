#include "jnr/eig.hpp"

#include <lapacke.h>

#include <string>

#include "jnr/errors.hpp"

namespace jnr {

namespace {

constexpr int kLapackThreshold = 400;

void check_info(int info, const char* routine) {
  if (info != 0)
    throw NumericalError(std::string(routine) + " failed with info = " + std::to_string(info));
}

void verify_residual(double resid, double scale, const char* what) {
  if (!(resid <= 1e-10 * (scale > 1.0 ? scale : 1.0)))
    throw NumericalError(std::string("eigensolver residual contract violated in ") + what +
                         ": " + std::to_string(resid));
}

}  // namespace

SymEigen sym_eigen(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  SymEigen r;
  if (n >= kLapackThreshold) {
    r.vectors = A;
    r.values.resize(n);
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, r.vectors.data(), n,
                                    r.values.data());
    check_info(info, "dsyevd");
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw NumericalError("SelfAdjointEigenSolver failed");
    r.values = es.eigenvalues();
    r.vectors = es.eigenvectors();
  }
  return r;
}

Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  if (n >= kLapackThreshold) {
    Eigen::MatrixXd work = A;
    Eigen::VectorXd w(n);
    const int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, w.data());
    check_info(info, "dsyevd");
    return w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("SelfAdjointEigenSolver failed");
  return es.eigenvalues();
}

double sym_min_eigenvalue(const Eigen::MatrixXd& A) { return sym_eigenvalues(A)(0); }

Eigen::VectorXd herm_eigenvalues(const Eigen::MatrixXcd& A) {
  if (A.imag().isZero(0.0)) return sym_eigenvalues(A.real());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("SelfAdjointEigenSolver failed");
  return es.eigenvalues();
}

double top_eigenpair_real(const Eigen::MatrixXd& A, Eigen::VectorXd& vec) {
  const SymEigen es = sym_eigen(A);
  const int n = static_cast<int>(A.rows());
  vec = es.vectors.col(n - 1);
  const double lambda = es.values(n - 1);
  const double scale = A.cwiseAbs().rowwise().sum().maxCoeff();
  verify_residual((A * vec - lambda * vec).norm(), scale, "top_eigenpair_real");
  return lambda;
}

double top_eigenpair(const Eigen::MatrixXcd& A, Eigen::VectorXcd& vec) {
  if (A.imag().isZero(0.0)) {
    Eigen::VectorXd rv;
    const double lambda = top_eigenpair_real(A.real(), rv);
    vec = rv.cast<std::complex<double>>();
    return lambda;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
  if (es.info() != Eigen::Success) throw NumericalError("SelfAdjointEigenSolver failed");
  const int n = static_cast<int>(A.rows());
  vec = es.eigenvectors().col(n - 1);
  const double lambda = es.eigenvalues()(n - 1);
  const double scale = A.cwiseAbs().rowwise().sum().maxCoeff();
  verify_residual((A * vec - lambda * vec).norm(), scale, "top_eigenpair");
  return lambda;
}

}  // namespace jnr
