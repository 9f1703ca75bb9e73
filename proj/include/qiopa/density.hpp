#pragma once

#include "qiopa/fock.hpp"

namespace qiopa {

// Hermitian, positive, unit-trace operator over the two-mode number basis.
// Construction checks hermiticity (1e-12, max entry) and trace (1e-10);
// positivity is checked where a spectral decomposition happens anyway
// (fidelity, filtering, validate) since it costs a full eigensolve.
struct DensityOperator {
    TwoModeSpace space;
    Matrix matrix;

    DensityOperator(TwoModeSpace s, Matrix m);

    double trace_real() const { return matrix.trace().real(); }
    double purity() const;  // Tr(rho^2)

    // Smallest eigenvalue; used by the full invariant check.
    double min_eigenvalue() const;

    // Throws InvariantError if any eigenvalue < floor.
    void assert_positive(double floor = -1e-10) const;
};

// Rank-1 projector |psi><psi| / <psi|psi>. The input must be normalized to
// within 1e-8, otherwise NormalizationError.
DensityOperator density_from_pure(const PureState& psi);

// Tr(rho (n1 + n2)), total across both modes.
double mean_photon_number(const DensityOperator& rho);

}  // namespace qiopa
