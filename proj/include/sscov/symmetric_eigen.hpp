#pragma once

#include <Eigen/Dense>

namespace sscov {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column j pairs with values(j); empty unless requested
};

/// Householder reduction to tridiagonal form followed by implicit-shift QL
/// (the EISPACK tred2/tql2 pair). Throws DomainError when S is not square or
/// not symmetric to `symmetry_tol` relative to its largest entry, and
/// NumericalContractError if QL fails to converge.
SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& S, bool want_vectors,
                               double symmetry_tol = 1e-10);

/// Ascending eigenvalues only.
Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& S, double symmetry_tol = 1e-10);

}  // namespace sscov
