#pragma once

#include "qiopa/fock.hpp"

namespace qiopa {

// Parametric gain of the amplifier, with the derived hyperbolic pair.
struct GainParams {
    double g;
    double C;      // cosh g
    double Gamma;  // tanh g

    explicit GainParams(double gain);
};

// Equatorial injection phase, normalized to [0, 2pi).
struct EquatorialPhase {
    double phi;

    explicit EquatorialPhase(double p);
};

inline constexpr double kDefaultTailTol = 1e-8;

// Smallest cutoff such that 1 - ||truncated analytic vector|| < tail_tol.
int required_cutoff_pole(const GainParams& gain, double tail_tol = kDefaultTailTol);
int required_cutoff_equatorial(const GainParams& gain, double tail_tol = kDefaultTailTol);
int required_cutoff_coherent(double alpha_sq, double tail_tol = kDefaultTailTol);

// Smallest cutoff such that the amplified equatorial state keeps all but
// tail_tol of its norm within complete layers n + m <= cutoff. Basis
// rotations act exactly on those layers only, so cross-basis comparisons
// need this (stronger) cutoff rather than the per-mode rule.
int required_cutoff_equatorial_layers(const GainParams& gain, double tail_tol = kDefaultTailTol);

// 1 - norm of the analytically truncated state at a given cutoff.
double pole_truncation_tail(const GainParams& gain, int cutoff);
double equatorial_truncation_tail(const GainParams& gain, int cutoff);

enum class Pole { H, V };
enum class RelativeSign { PlusI, MinusI };
enum class CatSign { Plus, Minus };

// Amplified pole seed: amplitudes C^-2 Gamma^i sqrt(i+1) on |i+1, i> for H
// (mode-swapped for V). Amplitudes are the analytic coefficients; the norm
// is 1 up to the verified tail. Throws TruncationError if the space cutoff
// cannot hold the state within tail_tol.
PureState amplified_pole_state(const GainParams& gain, Pole pole, const TwoModeSpace& space,
                               double tail_tol = kDefaultTailTol);

// Amplified equatorial seed in its own basis {phi, phi_perp}: amplitudes
// gamma_ij = 2^-(i+j) C^-2 (e^{-i phi} Gamma)^i (-e^{i phi} Gamma)^j
//            sqrt((2i+1)!) sqrt((2j)!) / (i! j!)
// on |2i+1, 2j>. The space basis label must match `phase`.
PureState amplified_equatorial_state(const GainParams& gain, const EquatorialPhase& phase,
                                     const TwoModeSpace& space, double tail_tol = kDefaultTailTol);

// The orthogonal macro-qubit Phi^{phi_perp} expressed in the same {phi,
// phi_perp} basis (odd photon support moves to mode 2). Exact: the basis
// change from {phi+pi, ...} is a mode swap with phases.
PureState amplified_equatorial_partner(const GainParams& gain, const EquatorialPhase& phase,
                                       const TwoModeSpace& space, double tail_tol = kDefaultTailTol);

// Normalized superposition (a + s*i*b)/sqrt(2) * N with s = +1|-1 and N
// computed numerically from the constructed vector.
PureState mqs_superposition(const PureState& a, const PureState& b, RelativeSign sign);

// Coherent state in mode 1 (mode 2 vacuum): amplitudes
// e^{-|alpha|^2/2} alpha^n / sqrt(n!) on |n, 0>.
PureState coherent_state(Complex alpha, const TwoModeSpace& space,
                         double tail_tol = kDefaultTailTol);

// Even/odd coherent-state superposition (|alpha> +- |-alpha>), numerically
// normalized; the odd cat carries exact zeros on even photon numbers and
// vice versa.
PureState coherent_mqs(Complex alpha, CatSign sign, const TwoModeSpace& space,
                       double tail_tol = kDefaultTailTol);

// ---- product structure -------------------------------------------------
//
// The amplified equatorial state factorizes over the two polarization
// modes (gamma_ij = u_i * w_j), which the sweep code exploits: loss acts
// per mode and fidelity multiplies over tensor factors.

struct ProductPure {
    Vector mode1;  // length cutoff+1
    Vector mode2;

    double norm() const { return mode1.norm() * mode2.norm(); }
};

// Unnormalized analytic factors of the amplified equatorial state.
ProductPure equatorial_product(const GainParams& gain, const EquatorialPhase& phase, int cutoff);

// Factors of the orthogonal partner in the same basis.
ProductPure equatorial_partner_product(const GainParams& gain, const EquatorialPhase& phase,
                                       int cutoff);

// Flattens mode1 (x) mode2 into a two-mode amplitude vector.
PureState from_product(const TwoModeSpace& space, const ProductPure& p);

// A two-mode pure state given as sum_t coef_t * (mode1_t (x) mode2_t);
// the macro-qubit superpositions have two terms.
struct SumOfProducts {
    std::vector<ProductPure> terms;
    std::vector<Complex> coefficients;

    PureState flatten(const TwoModeSpace& space) const;
};

}  // namespace qiopa
