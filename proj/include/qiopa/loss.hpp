#pragma once

#include <vector>

#include "qiopa/density.hpp"
#include "qiopa/fock.hpp"

namespace qiopa {

// Beam-splitter loss: reflectivity R is the lost fraction, T = 1 - R the
// transmitted one.
struct LossParams {
    double R;
    double T;

    explicit LossParams(double reflectivity);
};

// Single-mode damping coefficients c_k(n) = sqrt(binom(n,k) T^{n-k} R^k),
// the amplitude for |n> -> |n-k| after losing exactly k photons.
// Returned as coef[k][n] with coef[k][n] = 0 for k > n.
std::vector<std::vector<double>> loss_coefficients(int cutoff, const LossParams& loss);

// The ordered single-mode Kraus family {K_k}, k = 0..cutoff, with
// K_k |n> = c_k(n) |n-k>. Satisfies sum_k K_k^dag K_k = identity exactly
// (binomial theorem) on the truncated space.
std::vector<Matrix> loss_kraus(int cutoff, const LossParams& loss);

// Two-mode channel: rho_T = sum_{k,l} (K_k (x) K_l) rho (K_k (x) K_l)^dag,
// contracted mode by mode so memory stays at dimension^2. The output is
// re-hermitized, spectrally repaired (eigenvalues in [-1e-9, 0) clipped,
// below that InvariantError) and renormalized to unit trace.
DensityOperator apply_loss(const DensityOperator& rho, const LossParams& loss);

// Single-mode version used by the product-structure sweep paths; no
// spectral repair (the small matrices feed straight into eigensolves).
Matrix apply_loss_single_mode(const Matrix& rho, const LossParams& loss);

// Columns K_k s of a lossy single-mode pure state, one per k; column k has
// squared norm equal to the probability of losing exactly k photons.
Matrix lossy_pure_columns(const Vector& s, const LossParams& loss);

}  // namespace qiopa
