#pragma once

#include <Eigen/Dense>

#include "qiopa/fock.hpp"

namespace qiopa {

struct HermitianEigen {
    Eigen::VectorXd values;  // ascending
    Matrix vectors;          // columns
};

// Eigendecomposition of a Hermitian matrix. Uses LAPACK (zheevd) when the
// build found it, otherwise Eigen's SelfAdjointEigenSolver.
HermitianEigen hermitian_eigensystem(const Matrix& a);

// Eigenvalues only.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& a);

// V f(w) V^dagger for a Hermitian input; negative eigenvalues above `floor`
// are clipped to zero first, anything below `floor` throws InvariantError.
Matrix hermitian_sqrt(const Matrix& a, double floor = -1e-10);

// Singular values, descending.
Eigen::VectorXd singular_values(const Matrix& a);

// Sum of singular values (trace norm).
double nuclear_norm(const Matrix& a);

// max |a_ij - conj(a_ji)| over all entries.
double hermiticity_defect(const Matrix& a);

// Sum of sqrt(max(w, 0)) with a hard floor: w < floor throws.
double sum_sqrt_clipped(const Eigen::VectorXd& w, double floor);

}  // namespace qiopa
