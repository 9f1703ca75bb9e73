#include "qiopa/rotation.hpp"

#include <cmath>
#include <vector>

namespace qiopa {

namespace {

std::vector<double> log_factorials(int up_to) {
    std::vector<double> lf(up_to + 1, 0.0);
    for (int t = 1; t <= up_to; ++t) lf[t] = lf[t - 1] + std::log(static_cast<double>(t));
    return lf;
}

// std::pow(complex(0,0), 0) goes through exp(0 * log 0) and NaNs; exact zero
// entries are common here (identity, swaps), so take integer powers directly.
Complex cpow_int(Complex base, int e) {
    Complex r = 1.0;
    for (int t = 0; t < e; ++t) r *= base;
    return r;
}

// Amplitude of |p, q> in the image of |n, m> under the lifted action,
// from the binomial expansion of (u11 a1+ + u21 a2+)^n (u12 a1+ + u22 a2+)^m.
Complex layer_block_entry(const Eigen::Matrix2cd& u, int n, int m, int p,
                          const std::vector<double>& lf) {
    const int q = n + m - p;
    Complex sum = 0.0;
    const int k_lo = std::max(0, p - m);
    const int k_hi = std::min(n, p);
    for (int k = k_lo; k <= k_hi; ++k) {
        const int l = p - k;
        double log_comb = lf[n] - lf[k] - lf[n - k] + lf[m] - lf[l] - lf[m - l];
        Complex term = std::exp(log_comb);
        term *= cpow_int(u(0, 0), k) * cpow_int(u(1, 0), n - k) * cpow_int(u(0, 1), l) *
                cpow_int(u(1, 1), m - l);
        sum += term;
    }
    double log_scale = 0.5 * (lf[p] + lf[q] - lf[n] - lf[m]);
    return sum * std::exp(log_scale);
}

}  // namespace

ModeUnitary::ModeUnitary(Eigen::Matrix2cd m) : u(std::move(m)) {
    double defect = (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
    if (defect > 1e-12) throw InvariantError("ModeUnitary: u^dagger u deviates from identity");
}

bool ModeUnitary::is_monomial(double eps) const {
    bool diag = std::abs(u(0, 1)) < eps && std::abs(u(1, 0)) < eps;
    bool anti = std::abs(u(0, 0)) < eps && std::abs(u(1, 1)) < eps;
    return diag || anti;
}

ModeUnitary basis_change(const BasisLabel& from, const BasisLabel& to) {
    Eigen::Matrix2cd f, t;
    f.col(0) = from.mode1_jones();
    f.col(1) = from.mode2_jones();
    t.col(0) = to.mode1_jones();
    t.col(1) = to.mode2_jones();
    return ModeUnitary(t.adjoint() * f);
}

Matrix lift_mode_unitary(const TwoModeSpace& space, const ModeUnitary& mu) {
    const int c = space.cutoff();
    const int d = space.dimension();
    const auto lf = log_factorials(2 * c + 1);
    const bool monomial = mu.is_monomial();
    const Eigen::Matrix2cd& u = mu.u;

    Matrix out = Matrix::Zero(d, d);
    for (int n = 0; n <= c; ++n) {
        for (int m = 0; m <= c; ++m) {
            const int col = space.index(n, m);
            const int layer = n + m;
            if (layer <= c) {
                for (int p = std::max(0, layer - c); p <= std::min(layer, c); ++p) {
                    out(space.index(p, layer - p), col) = layer_block_entry(u, n, m, p, lf);
                }
            } else if (monomial) {
                if (std::abs(u(0, 1)) < 1e-14) {  // diagonal: phases only
                    out(col, col) = cpow_int(u(0, 0), n) * cpow_int(u(1, 1), m);
                } else {  // antidiagonal: mode swap with phases
                    out(space.index(m, n), col) = cpow_int(u(1, 0), n) * cpow_int(u(0, 1), m);
                }
            } else {
                out(col, col) = 1.0;  // incomplete layer passed through
            }
        }
    }
    return out;
}

PureState apply_mode_unitary(const PureState& psi, const ModeUnitary& mu, const BasisLabel& target) {
    const int c = psi.space.cutoff();
    const auto lf = log_factorials(2 * c + 1);
    const bool monomial = mu.is_monomial();
    const Eigen::Matrix2cd& u = mu.u;
    const TwoModeSpace out_space(c, target);

    Vector out = Vector::Zero(psi.space.dimension());
    for (int n = 0; n <= c; ++n) {
        for (int m = 0; m <= c; ++m) {
            const Complex amp = psi.amplitudes[psi.space.index(n, m)];
            if (amp == 0.0) continue;
            const int layer = n + m;
            if (layer <= c) {
                for (int p = std::max(0, layer - c); p <= std::min(layer, c); ++p) {
                    out[out_space.index(p, layer - p)] += amp * layer_block_entry(u, n, m, p, lf);
                }
            } else if (monomial) {
                if (std::abs(u(0, 1)) < 1e-14) {
                    out[out_space.index(n, m)] += amp * cpow_int(u(0, 0), n) * cpow_int(u(1, 1), m);
                } else {
                    out[out_space.index(m, n)] += amp * cpow_int(u(1, 0), n) * cpow_int(u(0, 1), m);
                }
            } else {
                out[out_space.index(n, m)] += amp;
            }
        }
    }
    return PureState(out_space, std::move(out));
}

PureState expressed_in(const PureState& psi, const BasisLabel& target) {
    if (psi.space.basis() == target) return psi;
    return apply_mode_unitary(psi, basis_change(psi.space.basis(), target), target);
}

}  // namespace qiopa
