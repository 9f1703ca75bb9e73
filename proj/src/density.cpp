#include "qiopa/density.hpp"

#include <cmath>
#include <sstream>

#include "qiopa/linalg.hpp"

namespace qiopa {

DensityOperator::DensityOperator(TwoModeSpace s, Matrix m) : space(s), matrix(std::move(m)) {
    if (matrix.rows() != space.dimension() || matrix.cols() != space.dimension()) {
        throw SpaceMismatchError("DensityOperator: matrix size does not match space dimension");
    }
    double herm = hermiticity_defect(matrix);
    if (herm > 1e-12) {
        std::ostringstream os;
        os << "DensityOperator: hermiticity defect " << herm;
        throw InvariantError(os.str());
    }
    double tr = matrix.trace().real();
    if (std::fabs(tr - 1.0) > 1e-10) {
        std::ostringstream os;
        os << "DensityOperator: trace " << tr << " != 1";
        throw InvariantError(os.str());
    }
}

double DensityOperator::purity() const {
    // Tr(rho^2) = ||rho||_F^2 for Hermitian rho
    return matrix.squaredNorm();
}

double DensityOperator::min_eigenvalue() const {
    return hermitian_eigenvalues(matrix).minCoeff();
}

void DensityOperator::assert_positive(double floor) const {
    double lo = min_eigenvalue();
    if (lo < floor) {
        std::ostringstream os;
        os << "DensityOperator: eigenvalue " << lo << " below " << floor;
        throw InvariantError(os.str());
    }
}

DensityOperator density_from_pure(const PureState& psi) {
    double n = psi.norm();
    if (std::fabs(n - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "density_from_pure: input norm " << n << " is off by more than 1e-8";
        throw NormalizationError(os.str());
    }
    Matrix m = (psi.amplitudes * psi.amplitudes.adjoint()) / (n * n);
    return DensityOperator(psi.space, std::move(m));
}

double mean_photon_number(const DensityOperator& rho) {
    const int c = rho.space.cutoff();
    double total = 0.0;
    for (int n = 0; n <= c; ++n)
        for (int m = 0; m <= c; ++m)
            total += (n + m) * rho.matrix(n * (c + 1) + m, n * (c + 1) + m).real();
    return total;
}

}  // namespace qiopa
