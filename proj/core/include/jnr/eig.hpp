#pragma once

#include <Eigen/Dense>

namespace jnr {

struct SymEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns
};

// Full dense symmetric eigendecomposition. Routed through LAPACK (dsyevd) for
// large matrices, Eigen otherwise.
SymEigen sym_eigen(const Eigen::MatrixXd& A);
Eigen::VectorXd sym_eigenvalues(const Eigen::MatrixXd& A);
double sym_min_eigenvalue(const Eigen::MatrixXd& A);

Eigen::VectorXd herm_eigenvalues(const Eigen::MatrixXcd& A);

// Top eigenpair of a Hermitian matrix, with the residual contract
// |Av - lambda v| <= 1e-10 |A| verified (throws NumericalError otherwise).
// Real-symmetric input takes a real solve path.
double top_eigenpair(const Eigen::MatrixXcd& A, Eigen::VectorXcd& vec);
double top_eigenpair_real(const Eigen::MatrixXd& A, Eigen::VectorXd& vec);

}  // namespace jnr
