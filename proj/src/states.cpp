#include "qiopa/states.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "qiopa/rotation.hpp"

namespace qiopa {

namespace {

constexpr int kMaxCutoffSearch = 4096;

std::vector<double> log_factorials(int up_to) {
    std::vector<double> lf(up_to + 1, 0.0);
    for (int t = 1; t <= up_to; ++t) lf[t] = lf[t - 1] + std::log(static_cast<double>(t));
    return lf;
}

void check_tail(double tail, double tail_tol, int cutoff, const char* what) {
    if (!(tail < tail_tol)) {
        std::ostringstream os;
        os << what << ": cutoff " << cutoff << " leaves tail " << tail << " >= tolerance "
           << tail_tol;
        throw TruncationError(os.str());
    }
}

// Squared analytic mode-1 / mode-2 coefficient magnitudes for the
// equatorial expansion, up to index i (photon numbers 2i+1 and 2i).
// mode1: C^-3 Gamma^{2i} (2i+1)! / (4^i i!^2),  sums to 1
// mode2: C^-1 Gamma^{2j} (2j)!   / (4^j j!^2),  sums to 1
double equatorial_mode1_weight(const GainParams& gain, int i, const std::vector<double>& lf) {
    if (gain.Gamma == 0.0 && i > 0) return 0.0;
    double lg = i > 0 ? 2.0 * i * std::log(gain.Gamma) : 0.0;
    return std::exp(-3.0 * std::log(gain.C) + lg - i * std::log(4.0) + lf[2 * i + 1] -
                    2.0 * lf[i]);
}

double equatorial_mode2_weight(const GainParams& gain, int j, const std::vector<double>& lf) {
    if (gain.Gamma == 0.0 && j > 0) return 0.0;
    double lg = j > 0 ? 2.0 * j * std::log(gain.Gamma) : 0.0;
    return std::exp(-1.0 * std::log(gain.C) + lg - j * std::log(4.0) + lf[2 * j] - 2.0 * lf[j]);
}

}  // namespace

GainParams::GainParams(double gain) : g(gain), C(std::cosh(gain)), Gamma(std::tanh(gain)) {
    if (!(gain >= 0.0)) throw InvariantError("GainParams: g must be >= 0");
}

EquatorialPhase::EquatorialPhase(double p) {
    phi = std::fmod(p, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi > 2.0 * kPi - 1e-12) phi = 0.0;
}

int required_cutoff_pole(const GainParams& gain, double tail_tol) {
    double sum = 0.0;
    for (int c = 1; c <= kMaxCutoffSearch; ++c) {
        const int i = c - 1;  // |i+1, i> fits iff i <= c-1
        sum += std::pow(gain.C, -4.0) * std::pow(gain.Gamma, 2.0 * i) * (i + 1);
        if (1.0 - std::sqrt(sum) < tail_tol) return c;
    }
    throw TruncationError("required_cutoff_pole: no cutoff below search limit");
}

int required_cutoff_equatorial(const GainParams& gain, double tail_tol) {
    const auto lf = log_factorials(2 * kMaxCutoffSearch + 1);
    double s1 = equatorial_mode1_weight(gain, 0, lf);  // n = 1 present from c = 1
    double s2 = equatorial_mode2_weight(gain, 0, lf);  // m = 0 always present
    for (int c = 1; c <= kMaxCutoffSearch; ++c) {
        if (c % 2 == 0 && c >= 2) s2 += equatorial_mode2_weight(gain, c / 2, lf);
        if (c % 2 == 1 && c >= 3) s1 += equatorial_mode1_weight(gain, (c - 1) / 2, lf);
        if (1.0 - std::sqrt(s1 * s2) < tail_tol) return c;
    }
    throw TruncationError("required_cutoff_equatorial: no cutoff below search limit");
}

int required_cutoff_coherent(double alpha_sq, double tail_tol) {
    if (alpha_sq < 0.0) throw InvariantError("required_cutoff_coherent: |alpha|^2 must be >= 0");
    double log_term = -alpha_sq;  // log of e^-a a^n / n! at n = 0
    double sum = std::exp(log_term);
    if (1.0 - std::sqrt(sum) < tail_tol) return 1;  // keep at least one excited level around
    for (int c = 1; c <= kMaxCutoffSearch; ++c) {
        log_term += std::log(alpha_sq) - std::log(static_cast<double>(c));
        sum += std::exp(log_term);
        if (1.0 - std::sqrt(std::min(sum, 1.0)) < tail_tol) return c;
    }
    throw TruncationError("required_cutoff_coherent: no cutoff below search limit");
}

int required_cutoff_equatorial_layers(const GainParams& gain, double tail_tol) {
    const auto lf = log_factorials(2 * kMaxCutoffSearch + 3);
    // mass on layer n + m = 2(i+j) + 1, summed over shells s = i + j
    double sum = 0.0;
    std::vector<double> m1, m2;
    for (int c = 1; c <= kMaxCutoffSearch; ++c) {
        if (c % 2 == 0) continue;  // layers are odd
        const int s = (c - 1) / 2;
        while (static_cast<int>(m1.size()) <= s) {
            m1.push_back(equatorial_mode1_weight(gain, static_cast<int>(m1.size()), lf));
            m2.push_back(equatorial_mode2_weight(gain, static_cast<int>(m2.size()), lf));
        }
        for (int i = 0; i <= s; ++i) sum += m1[i] * m2[s - i];
        if (1.0 - std::sqrt(std::min(sum, 1.0)) < tail_tol) return c;
    }
    throw TruncationError("required_cutoff_equatorial_layers: no cutoff below search limit");
}

double pole_truncation_tail(const GainParams& gain, int cutoff) {
    double sum = 0.0;
    for (int i = 0; i + 1 <= cutoff; ++i) {
        sum += std::pow(gain.C, -4.0) * std::pow(gain.Gamma, 2.0 * i) * (i + 1);
    }
    return 1.0 - std::sqrt(std::min(sum, 1.0));
}

double equatorial_truncation_tail(const GainParams& gain, int cutoff) {
    return 1.0 - equatorial_product(gain, EquatorialPhase(0.0), cutoff).norm();
}

PureState amplified_pole_state(const GainParams& gain, Pole pole, const TwoModeSpace& space,
                               double tail_tol) {
    if (space.basis().kind() != BasisLabel::Kind::Poles) {
        throw SpaceMismatchError("amplified_pole_state: space must carry the {H,V} basis");
    }
    const int c = space.cutoff();
    Vector amps = Vector::Zero(space.dimension());
    double sum = 0.0;
    for (int i = 0; i + 1 <= c; ++i) {
        double a = std::pow(gain.C, -2.0) * std::pow(gain.Gamma, static_cast<double>(i)) *
                   std::sqrt(i + 1.0);
        sum += a * a;
        if (pole == Pole::H) {
            amps[space.index(i + 1, i)] = a;
        } else {
            amps[space.index(i, i + 1)] = a;
        }
    }
    check_tail(1.0 - std::sqrt(sum), tail_tol, c, "amplified_pole_state");
    return PureState(space, std::move(amps));
}

PureState amplified_equatorial_state(const GainParams& gain, const EquatorialPhase& phase,
                                     const TwoModeSpace& space, double tail_tol) {
    if (space.basis() != BasisLabel::equatorial(phase.phi)) {
        throw SpaceMismatchError(
            "amplified_equatorial_state: space basis must be the equatorial pair of the "
            "requested phase");
    }
    ProductPure p = equatorial_product(gain, phase, space.cutoff());
    check_tail(1.0 - p.norm(), tail_tol, space.cutoff(), "amplified_equatorial_state");
    return from_product(space, p);
}

PureState amplified_equatorial_partner(const GainParams& gain, const EquatorialPhase& phase,
                                       const TwoModeSpace& space, double tail_tol) {
    if (space.basis() != BasisLabel::equatorial(phase.phi)) {
        throw SpaceMismatchError(
            "amplified_equatorial_partner: space basis must be the equatorial pair of the "
            "requested phase");
    }
    ProductPure p = equatorial_partner_product(gain, phase, space.cutoff());
    check_tail(1.0 - p.norm(), tail_tol, space.cutoff(), "amplified_equatorial_partner");
    return from_product(space, p);
}

PureState mqs_superposition(const PureState& a, const PureState& b, RelativeSign sign) {
    require_same_space(a.space, b.space, "mqs_superposition");
    const Complex i_unit(0.0, 1.0);
    Vector v = a.amplitudes + (sign == RelativeSign::PlusI ? i_unit : -i_unit) * b.amplitudes;
    double n = v.norm();
    if (n < 1e-12) throw NormalizationError("mqs_superposition: components cancel");
    return PureState(a.space, v / n);
}

PureState coherent_state(Complex alpha, const TwoModeSpace& space, double tail_tol) {
    const int c = space.cutoff();
    const double a2 = std::norm(alpha);
    Vector amps = Vector::Zero(space.dimension());
    double sum = 0.0;
    Complex term = std::exp(-a2 / 2.0);  // alpha^n / sqrt(n!) built up iteratively
    for (int n = 0; n <= c; ++n) {
        amps[space.index(n, 0)] = term;
        sum += std::norm(term);
        term *= alpha / std::sqrt(n + 1.0);
    }
    check_tail(1.0 - std::sqrt(std::min(sum, 1.0)), tail_tol, c, "coherent_state");
    return PureState(space, std::move(amps));
}

PureState coherent_mqs(Complex alpha, CatSign sign, const TwoModeSpace& space, double tail_tol) {
    PureState plus = coherent_state(alpha, space, tail_tol);
    const int c = space.cutoff();
    Vector v = Vector::Zero(space.dimension());
    // |alpha> +- |-alpha>: the surviving parity gets doubled amplitudes, the
    // other parity is exactly zero.
    const int keep = sign == CatSign::Plus ? 0 : 1;
    for (int n = keep; n <= c; n += 2) {
        v[space.index(n, 0)] = 2.0 * plus.amplitudes[space.index(n, 0)];
    }
    double nrm = v.norm();
    if (nrm < 1e-150) throw NormalizationError("coherent_mqs: cat amplitude vanishes");
    return PureState(space, v / nrm);
}

ProductPure equatorial_product(const GainParams& gain, const EquatorialPhase& phase, int cutoff) {
    const auto lf = log_factorials(2 * cutoff + 1);
    ProductPure p;
    p.mode1 = Vector::Zero(cutoff + 1);
    p.mode2 = Vector::Zero(cutoff + 1);
    const double logC = std::log(gain.C);
    for (int i = 0; 2 * i + 1 <= cutoff; ++i) {
        if (gain.Gamma == 0.0 && i > 0) break;
        double lg = i > 0 ? i * (std::log(gain.Gamma) - std::log(2.0)) : 0.0;
        double mag = std::exp(-1.5 * logC + lg + 0.5 * lf[2 * i + 1] - lf[i]);
        p.mode1[2 * i + 1] = mag * std::polar(1.0, -phase.phi * i);
    }
    for (int j = 0; 2 * j <= cutoff; ++j) {
        if (gain.Gamma == 0.0 && j > 0) break;
        double lg = j > 0 ? j * (std::log(gain.Gamma) - std::log(2.0)) : 0.0;
        double mag = std::exp(-0.5 * logC + lg + 0.5 * lf[2 * j] - lf[j]);
        double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        p.mode2[2 * j] = sgn * mag * std::polar(1.0, phase.phi * j);
    }
    return p;
}

ProductPure equatorial_partner_product(const GainParams& gain, const EquatorialPhase& phase,
                                       int cutoff) {
    // Phi^{phi_perp} = lift of the {phi+pi} state through the antidiagonal
    // basis change u = [[0, x], [y, 0]] with x = -e^{-i phi}, y = e^{i phi}:
    // outer(s1, s2) |-> outer(x^p s2[p], y^q s1[q]).
    ProductPure src = equatorial_product(gain, EquatorialPhase(phase.phi + kPi), cutoff);
    const Complex x = -std::polar(1.0, -phase.phi);
    const Complex y = std::polar(1.0, phase.phi);
    ProductPure out;
    out.mode1 = Vector::Zero(cutoff + 1);
    out.mode2 = Vector::Zero(cutoff + 1);
    Complex xp = 1.0, yq = 1.0;
    for (int t = 0; t <= cutoff; ++t) {
        out.mode1[t] = xp * src.mode2[t];
        out.mode2[t] = yq * src.mode1[t];
        xp *= x;
        yq *= y;
    }
    return out;
}

PureState from_product(const TwoModeSpace& space, const ProductPure& p) {
    const int c = space.cutoff();
    if (p.mode1.size() != c + 1 || p.mode2.size() != c + 1) {
        throw SpaceMismatchError("from_product: factor length does not match space cutoff");
    }
    Vector amps(space.dimension());
    for (int n = 0; n <= c; ++n)
        for (int m = 0; m <= c; ++m) amps[space.index(n, m)] = p.mode1[n] * p.mode2[m];
    return PureState(space, std::move(amps));
}

PureState SumOfProducts::flatten(const TwoModeSpace& space) const {
    Vector amps = Vector::Zero(space.dimension());
    const int c = space.cutoff();
    for (size_t t = 0; t < terms.size(); ++t) {
        for (int n = 0; n <= c; ++n)
            for (int m = 0; m <= c; ++m)
                amps[space.index(n, m)] += coefficients[t] * terms[t].mode1[n] * terms[t].mode2[m];
    }
    return PureState(space, std::move(amps));
}

}  // namespace qiopa
