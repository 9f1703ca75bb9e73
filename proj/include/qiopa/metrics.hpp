#pragma once

#include "qiopa/density.hpp"
#include "qiopa/fock.hpp"

namespace qiopa {

// Uhlmann fidelity F = Tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1].
// Rank-1 inputs (purity within 1e-12 of 1) short-cut to |<psi|phi>| via
// sqrt(Tr(rho sigma)). Matrix square roots go through the Hermitian
// eigensystem with eigenvalues clipped at zero (floor -1e-10).
double fidelity(const DensityOperator& rho, const DensityOperator& sigma);

// Same quantity as the sum of square roots of the spectrum of the product
// rho * sigma; kept as an independent algebraic route for cross-checks.
double fidelity_product_spectrum(const DensityOperator& rho, const DensityOperator& sigma);

// Fidelity from factorizations rho = A A^dag, sigma = B B^dag (columns need
// not be orthogonal): the nuclear norm of B^dag A. Unnormalized: scales as
// sqrt(tr rho * tr sigma).
double fidelity_factors(const Matrix& a, const Matrix& b);

// Core routine on raw Hermitian positive matrices (no space bookkeeping,
// no unit-trace requirement): Tr sqrt(sqrt(a) b sqrt(a)). Block sums and
// the single-mode sweep paths run through this.
double fidelity_psd(const Matrix& a, const Matrix& b, double floor = -1e-10);

// D = sqrt(1 - F), the convention used throughout (not sqrt(2 - 2F)).
double bures_from_fidelity(double f);
double bures_distance(const DensityOperator& rho, const DensityOperator& sigma);

// Closed-form distance between lossy pointer states |alpha>, |-alpha>:
// sqrt(1 - e^{-2 (1-R) |alpha|^2}).
double coherent_pointer_distance_closed(double alpha_sq, double reflectivity);

// Closed-form distance between the lossy even/odd cats:
// sqrt(1 - sqrt(1 - e^{-4 R |alpha|^2})).
double coherent_mqs_distance_closed(double alpha_sq, double reflectivity);

}  // namespace qiopa
