#include "qiopa/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <thread>

#include "qiopa/linalg.hpp"
#include "qiopa/metrics.hpp"

namespace qiopa {

namespace {

constexpr double kFactorPrune = 1e-15;

void run_parallel(int count, int threads, const std::function<void(int)>& body) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

Matrix pure_dm(const Vector& v) { return v * v.adjoint(); }

void check_tail(double tail, double tail_tol, int cutoff, const char* what) {
    if (!(tail < tail_tol)) {
        std::ostringstream os;
        os << what << ": cutoff " << cutoff << " leaves tail " << tail << " >= " << tail_tol;
        throw TruncationError(os.str());
    }
}

// ---- product family --------------------------------------------------------

struct ModePair {
    Vector m1, m2;  // normalized single-mode factors
};

ModePair normalized_modes(const ProductPure& p) {
    return {p.mode1 / p.mode1.norm(), p.mode2 / p.mode2.norm()};
}

// Fidelity multiplies over tensor factors, and the loss channel acts on
// each polarization mode independently. The per-mode fidelity runs on the
// Kraus-column factors: singular values of a cross Gram carry none of the
// sqrt-of-noise floor that near-null eigenvalues of a dense product have.
double lossy_vector_fidelity(const Vector& a, const Vector& b, const LossParams& loss) {
    return std::min(1.0, fidelity_factors(lossy_pure_columns(a, loss),
                                          lossy_pure_columns(b, loss)));
}

double product_pair_fidelity(const ModePair& a, const ModePair& b, const LossParams& loss) {
    return std::min(1.0, lossy_vector_fidelity(a.m1, b.m1, loss) *
                             lossy_vector_fidelity(a.m2, b.m2, loss));
}

// ---- pole family: blocks along lines n - m = delta -------------------------

// Amplitudes a[t] on |t + max(delta0,0), t + max(-delta0,0)>.
struct LineState {
    int delta0;
    Vector amp;
};

LineState pole_line(const GainParams& gain, Pole pole, int cutoff) {
    LineState line;
    line.delta0 = pole == Pole::H ? 1 : -1;
    line.amp = Vector::Zero(std::max(1, cutoff));
    for (int i = 0; i + 1 <= cutoff; ++i) {
        line.amp[i] = std::pow(gain.C, -2.0) * std::pow(gain.Gamma, static_cast<double>(i)) *
                      std::sqrt(i + 1.0);
    }
    line.amp /= line.amp.norm();
    return line;
}

// A state supported on a single line stays block-diagonal in delta = n - m
// after loss: the (k, l) Kraus column lives entirely on delta0 - k + l.
// Block rows are indexed by n - max(delta, 0).
std::map<int, Matrix> lossy_line_blocks(const LineState& line, const LossParams& loss,
                                        int cutoff) {
    const auto coef = loss_coefficients(cutoff, loss);
    const int n_off = std::max(line.delta0, 0);
    const int m_off = std::max(-line.delta0, 0);
    const int len = static_cast<int>(line.amp.size());

    std::map<int, std::vector<Vector>> cols;
    for (int k = 0; k <= cutoff; ++k) {
        for (int l = 0; l <= cutoff; ++l) {
            const int delta = line.delta0 - k + l;
            if (delta > cutoff || delta < -cutoff) continue;
            const int row_off = std::max(delta, 0);
            Vector col = Vector::Zero(cutoff + 1 - std::abs(delta));
            double nrm2 = 0.0;
            for (int t = 0; t < len; ++t) {
                const int n0 = t + n_off, m0 = t + m_off;
                if (k > n0 || l > m0 || n0 > cutoff || m0 > cutoff) continue;
                const double c = coef[k][n0] * coef[l][m0];
                if (c == 0.0) continue;
                const Complex entry = c * line.amp[t];
                col[n0 - k - row_off] += entry;
                nrm2 += std::norm(entry);
            }
            if (nrm2 > kFactorPrune * kFactorPrune) cols[delta].push_back(std::move(col));
        }
    }
    std::map<int, Matrix> blocks;
    for (auto& [delta, vecs] : cols) {
        Matrix m(vecs[0].size(), vecs.size());
        for (size_t j = 0; j < vecs.size(); ++j) m.col(j) = vecs[j];
        blocks.emplace(delta, std::move(m));
    }
    return blocks;
}

double line_pair_fidelity(const LineState& a, const LineState& b, const LossParams& loss,
                          int cutoff) {
    auto blocks_a = lossy_line_blocks(a, loss, cutoff);
    auto blocks_b = lossy_line_blocks(b, loss, cutoff);
    double f = 0.0;
    for (const auto& [delta, block_a] : blocks_a) {
        auto it = blocks_b.find(delta);
        if (it != blocks_b.end()) f += fidelity_factors(block_a, it->second);
    }
    return std::min(1.0, f);
}

// ---- superpositions of products: Kraus-column Gram route --------------------
//
// For rho = sum_kl v_kl v_kl^dag and sigma likewise, the fidelity is the
// nuclear norm of the cross Gram <w_{k'l'}, v_kl>; for states that are sums
// of mode products the Gram entries multiply out of per-mode column
// overlaps, so nothing of size dimension^2 is ever formed.

struct SumState {
    std::vector<ModePair> terms;
    std::vector<Complex> coef;
};

struct TermColumns {
    std::vector<Matrix> c1, c2;  // column k = K_k (mode vector)
};

TermColumns term_columns(const SumState& s, const LossParams& loss) {
    TermColumns tc;
    for (const auto& t : s.terms) {
        tc.c1.push_back(lossy_pure_columns(t.m1, loss));
        tc.c2.push_back(lossy_pure_columns(t.m2, loss));
    }
    return tc;
}

struct KeptPairs {
    std::vector<std::pair<int, int>> kl;
    double mass = 0.0;
};

KeptPairs kept_pairs(const SumState& s, const TermColumns& tc, int cutoff, double prune) {
    const size_t nt = s.terms.size();
    std::vector<Matrix> g1(nt * nt), g2(nt * nt);
    for (size_t a = 0; a < nt; ++a) {
        for (size_t b = 0; b < nt; ++b) {
            g1[a * nt + b] = tc.c1[a].adjoint() * tc.c1[b];
            g2[a * nt + b] = tc.c2[a].adjoint() * tc.c2[b];
        }
    }
    struct W {
        double w;
        int k, l;
    };
    std::vector<W> ws;
    ws.reserve((cutoff + 1) * (cutoff + 1));
    double total = 0.0;
    for (int k = 0; k <= cutoff; ++k) {
        for (int l = 0; l <= cutoff; ++l) {
            Complex w = 0.0;
            for (size_t a = 0; a < nt; ++a)
                for (size_t b = 0; b < nt; ++b)
                    w += std::conj(s.coef[a]) * s.coef[b] * g1[a * nt + b](k, k) *
                         g2[a * nt + b](l, l);
            const double wr = w.real();
            if (wr > 0.0) {
                ws.push_back({wr, k, l});
                total += wr;
            }
        }
    }
    std::sort(ws.begin(), ws.end(), [](const W& a, const W& b) {
        if (a.w != b.w) return a.w > b.w;
        return std::make_pair(a.k, a.l) < std::make_pair(b.k, b.l);
    });
    KeptPairs kept;
    for (const auto& w : ws) {
        if (!kept.kl.empty() && total - kept.mass <= prune * total) break;
        kept.kl.push_back({w.k, w.l});
        kept.mass += w.w;
    }
    return kept;
}

double sum_state_pair_fidelity(const SumState& a, const SumState& b, const LossParams& loss,
                               int cutoff) {
    TermColumns ca = term_columns(a, loss);
    TermColumns cb = term_columns(b, loss);
    KeptPairs kept_a = kept_pairs(a, ca, cutoff, kFactorPrune);
    KeptPairs kept_b = kept_pairs(b, cb, cutoff, kFactorPrune);

    const size_t na = a.terms.size(), nb = b.terms.size();
    std::vector<Matrix> g1(nb * na), g2(nb * na);
    for (size_t s = 0; s < nb; ++s) {
        for (size_t t = 0; t < na; ++t) {
            g1[s * na + t] = cb.c1[s].adjoint() * ca.c1[t];
            g2[s * na + t] = cb.c2[s].adjoint() * ca.c2[t];
        }
    }

    Matrix m(kept_b.kl.size(), kept_a.kl.size());
    for (size_t col = 0; col < kept_a.kl.size(); ++col) {
        const auto [k, l] = kept_a.kl[col];
        for (size_t row = 0; row < kept_b.kl.size(); ++row) {
            const auto [kp, lp] = kept_b.kl[row];
            Complex e = 0.0;
            for (size_t s = 0; s < nb; ++s)
                for (size_t t = 0; t < na; ++t)
                    e += std::conj(b.coef[s]) * a.coef[t] * g1[s * na + t](kp, k) *
                         g2[s * na + t](lp, l);
            m(row, col) = e;
        }
    }
    return std::min(1.0, nuclear_norm(m) / std::sqrt(kept_a.mass * kept_b.mass));
}

SumState mqs_sum_state(const GainParams& gain, int cutoff, RelativeSign sign) {
    // (Phi + s*i*Phi_perp)/sqrt2; the parity supports are disjoint, so the
    // numeric normalization is exactly 1 once the components are normalized.
    SumState s;
    const double r = 1.0 / std::sqrt(2.0);
    s.terms.push_back(normalized_modes(equatorial_product(gain, EquatorialPhase(0.0), cutoff)));
    s.coef.push_back(r);
    s.terms.push_back(
        normalized_modes(equatorial_partner_product(gain, EquatorialPhase(0.0), cutoff)));
    s.coef.push_back(sign == RelativeSign::PlusI ? Complex(0.0, r) : Complex(0.0, -r));
    return s;
}

// ---- filtered equatorial pair -----------------------------------------------

// Cells with |n - m| <= of_k, fixed deterministic order.
std::vector<std::pair<int, int>> band_cells(int cutoff, int of_k) {
    std::vector<std::pair<int, int>> cells;
    for (int d = -of_k; d <= of_k; ++d)
        for (int n = std::max(0, d); n <= std::min(cutoff, cutoff + d); ++n)
            cells.push_back({n, n - d});
    return cells;
}

struct MaskedFactor {
    Matrix c1, c2;  // per-mode lossy column sets
    std::vector<std::pair<int, int>> kept;
    Matrix band;            // band-cell rows of the kept columns
    double filtered_mass = 0.0;  // Tr(Pi rho) over ALL columns, kept or not
};

// The two-mode factor columns are sqrt-eigenvalue-weighted eigenvector
// products of the per-mode lossy states (the most compressed factorization
// available), ranked and pruned by their weight OUTSIDE the band: a column
// concentrated on |n - m| <= k contributes nothing once filtered, and the
// lossy state piles up near the diagonal as R -> 1.
Matrix eigen_factor(const Matrix& rho, double floor = 1e-18) {
    HermitianEigen es = hermitian_eigensystem(rho);
    int kept = 0;
    for (int i = 0; i < es.values.size(); ++i)
        if (es.values[i] > floor) ++kept;
    Matrix cols(rho.rows(), kept);
    int j = 0;
    for (int i = 0; i < es.values.size(); ++i) {
        if (es.values[i] > floor) {
            cols.col(j++) = es.vectors.col(i) * std::sqrt(es.values[i]);
        }
    }
    return cols;
}

MaskedFactor masked_factor(const ModePair& state, const LossParams& loss, int cutoff, int of_k,
                           const std::vector<std::pair<int, int>>& cells) {
    MaskedFactor f;
    f.c1 = eigen_factor(apply_loss_single_mode(pure_dm(state.m1), loss));
    f.c2 = eigen_factor(apply_loss_single_mode(pure_dm(state.m2), loss));
    const int r1 = static_cast<int>(f.c1.cols());
    const int r2 = static_cast<int>(f.c2.cols());
    Eigen::VectorXd w1 = f.c1.colwise().squaredNorm().real();
    Eigen::VectorXd w2 = f.c2.colwise().squaredNorm().real();

    // band mass per column pair: sum over |d| <= k of <|c1|^2_a, shift_d |c2|^2_b>
    Eigen::MatrixXd a1 = f.c1.cwiseAbs2().real();
    Eigen::MatrixXd a2 = f.c2.cwiseAbs2().real();
    Eigen::MatrixXd band_mass = Eigen::MatrixXd::Zero(r1, r2);
    for (int d = -of_k; d <= of_k; ++d) {
        const int lo = std::max(0, d);
        const int hi = std::min(cutoff, cutoff + d);
        band_mass.noalias() +=
            a1.middleRows(lo, hi - lo + 1).transpose() * a2.middleRows(lo - d, hi - lo + 1);
    }

    struct W {
        double w;
        int k, l;
    };
    std::vector<W> ws;
    double total = 0.0;
    for (int k = 0; k < r1; ++k) {
        for (int l = 0; l < r2; ++l) {
            const double w = std::max(0.0, w1[k] * w2[l] - band_mass(k, l));
            total += w;
            if (w > 0.0) ws.push_back({w, k, l});
        }
    }
    f.filtered_mass = total;
    if (total < 1e-12) return f;  // caller reports the empty selection

    std::sort(ws.begin(), ws.end(), [](const W& a, const W& b) {
        if (a.w != b.w) return a.w > b.w;
        return std::make_pair(a.k, a.l) < std::make_pair(b.k, b.l);
    });
    double acc = 0.0;
    for (const auto& w : ws) {
        if (!f.kept.empty() && total - acc <= kFactorPrune * total) break;
        f.kept.push_back({w.k, w.l});
        acc += w.w;
    }

    f.band = Matrix(cells.size(), f.kept.size());
    for (size_t j = 0; j < f.kept.size(); ++j) {
        const auto [k, l] = f.kept[j];
        for (size_t i = 0; i < cells.size(); ++i)
            f.band(i, j) = f.c1(cells[i].first, k) * f.c2(cells[i].second, l);
    }
    return f;
}

// Fidelity of the two filtered, renormalized lossy macro-qubits. The masked
// cross Gram splits as (full product Gram) - (band Gram): the filter removes
// a band of cells |n - m| <= k, and everything else is separable per mode.
double masked_pair_fidelity(const GainParams& gain, const LossParams& loss, int cutoff, int of_k,
                            double* prob_a, double* prob_b) {
    const auto cells = band_cells(cutoff, of_k);
    ModePair a = normalized_modes(equatorial_product(gain, EquatorialPhase(0.0), cutoff));
    ModePair b = normalized_modes(equatorial_partner_product(gain, EquatorialPhase(0.0), cutoff));
    MaskedFactor fa = masked_factor(a, loss, cutoff, of_k, cells);
    MaskedFactor fb = masked_factor(b, loss, cutoff, of_k, cells);

    *prob_a = fa.filtered_mass;
    *prob_b = fb.filtered_mass;
    if (*prob_a < 1e-12 || *prob_b < 1e-12) {
        std::ostringstream os;
        os << "filtered pair: success probability below 1e-12 at k = " << of_k;
        throw FilterEmptyError(os.str());
    }

    Matrix g1 = fb.c1.adjoint() * fa.c1;
    Matrix g2 = fb.c2.adjoint() * fa.c2;
    Matrix m(fb.kept.size(), fa.kept.size());
    for (size_t col = 0; col < fa.kept.size(); ++col) {
        const auto [k, l] = fa.kept[col];
        for (size_t row = 0; row < fb.kept.size(); ++row) {
            const auto [kp, lp] = fb.kept[row];
            m(row, col) = g1(kp, k) * g2(lp, l);
        }
    }
    m.noalias() -= fb.band.adjoint() * fa.band;
    return std::min(1.0, nuclear_norm(m) / std::sqrt(*prob_a * *prob_b));
}

SweepCurve make_curve(Family family, double param, std::optional<int> of_k,
                      const std::vector<double>& x_grid, const SweepOptions& opts, int cutoff,
                      double n0, const std::function<double(double, SweepSample*)>& eval) {
    SweepCurve curve;
    curve.family = family;
    curve.param = param;
    curve.of_k = of_k;
    curve.tail_tol = opts.tail_tol;
    curve.cutoff = cutoff;
    curve.n0 = n0;

    std::vector<double> xs = x_grid;
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
        if (x < -1e-12 || x > n0 * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "sweep: x = " << x << " outside [0, n0 = " << n0 << "]";
            throw InvariantError(os.str());
        }
    }

    curve.samples.resize(xs.size());
    run_parallel(static_cast<int>(xs.size()), opts.threads, [&](int i) {
        SweepSample s;
        s.x = xs[i];
        s.R = std::min(1.0, std::max(0.0, xs[i] / n0));
        s.value = eval(s.R, &s);
        curve.samples[i] = s;
    });
    return curve;
}

}  // namespace

std::string family_name(Family family) {
    switch (family) {
        case Family::EquatorialMqs: return "equatorial-mqs";
        case Family::PolePair: return "pole-pair";
        case Family::CoherentPointer: return "coherent-pointer";
        case Family::CoherentMqs: return "coherent-mqs";
        case Family::FilteredEquatorial: return "filtered";
    }
    return "unknown";
}

std::vector<double> default_x_grid(double n0) {
    std::vector<double> xs;
    const double m = std::min(4.0, n0);
    for (int i = 0; i < 60; ++i) xs.push_back(m * i / 59.0);
    if (n0 > m + 1e-9) {
        const double span = n0 - m;
        for (int j = 1; j <= 20; ++j) xs.push_back(n0 - span * std::pow(1000.0, -j / 20.0));
    }
    return xs;
}

int family_cutoff(Family family, double param, double tail_tol) {
    switch (family) {
        case Family::EquatorialMqs:
        case Family::FilteredEquatorial:
            return required_cutoff_equatorial(GainParams(param), tail_tol);
        case Family::PolePair: return required_cutoff_pole(GainParams(param), tail_tol);
        case Family::CoherentPointer:
        case Family::CoherentMqs: return required_cutoff_coherent(param, tail_tol);
    }
    throw InvariantError("family_cutoff: unknown family");
}

double family_n0(Family family, double param, int cutoff, double tail_tol) {
    switch (family) {
        case Family::EquatorialMqs:
        case Family::FilteredEquatorial: {
            check_tail(equatorial_truncation_tail(GainParams(param), cutoff), tail_tol, cutoff,
                       "family_n0(equatorial)");
            ModePair mp =
                normalized_modes(equatorial_product(GainParams(param), EquatorialPhase(0.0), cutoff));
            double n = 0.0;
            for (int t = 0; t <= cutoff; ++t)
                n += t * (std::norm(mp.m1[t]) + std::norm(mp.m2[t]));
            return n;
        }
        case Family::PolePair: {
            check_tail(pole_truncation_tail(GainParams(param), cutoff), tail_tol, cutoff,
                       "family_n0(pole)");
            LineState line = pole_line(GainParams(param), Pole::H, cutoff);
            double n = 0.0;
            for (int i = 0; i < line.amp.size(); ++i) n += (2 * i + 1) * std::norm(line.amp[i]);
            return n;
        }
        case Family::CoherentPointer:
        case Family::CoherentMqs:
            // x = R |alpha|^2 is the reference-curve convention; the exact
            // cat means a*tanh(a) and a*coth(a) are not used for the axis.
            return param;
    }
    throw InvariantError("family_n0: unknown family");
}

double equatorial_pair_distance(const GainParams& gain, double R, int cutoff, double phi) {
    ModePair a = normalized_modes(equatorial_product(gain, EquatorialPhase(phi), cutoff));
    ModePair b = normalized_modes(equatorial_partner_product(gain, EquatorialPhase(phi), cutoff));
    return bures_from_fidelity(product_pair_fidelity(a, b, LossParams(R)));
}

double pole_pair_distance(const GainParams& gain, double R, int cutoff) {
    LineState h = pole_line(gain, Pole::H, cutoff);
    LineState v = pole_line(gain, Pole::V, cutoff);
    return bures_from_fidelity(line_pair_fidelity(h, v, LossParams(R), cutoff));
}

double mqs_pair_distance(const GainParams& gain, double R, int cutoff) {
    SumState plus = mqs_sum_state(gain, cutoff, RelativeSign::PlusI);
    SumState minus = mqs_sum_state(gain, cutoff, RelativeSign::MinusI);
    return bures_from_fidelity(sum_state_pair_fidelity(plus, minus, LossParams(R), cutoff));
}

double coherent_pointer_pair_distance(double alpha_sq, double R, int cutoff) {
    TwoModeSpace space(cutoff, BasisLabel::poles());
    const double alpha = std::sqrt(alpha_sq);
    Vector a(cutoff + 1), b(cutoff + 1);
    PureState pa = coherent_state(alpha, space);
    PureState pb = coherent_state(-alpha, space);
    for (int n = 0; n <= cutoff; ++n) {
        a[n] = pa.amplitudes[space.index(n, 0)];
        b[n] = pb.amplitudes[space.index(n, 0)];
    }
    a.normalize();
    b.normalize();
    return bures_from_fidelity(lossy_vector_fidelity(a, b, LossParams(R)));
}

double coherent_mqs_pair_distance(double alpha_sq, double R, int cutoff) {
    TwoModeSpace space(cutoff, BasisLabel::poles());
    const double alpha = std::sqrt(alpha_sq);
    PureState cat_p = coherent_mqs(alpha, CatSign::Plus, space);
    PureState cat_m = coherent_mqs(alpha, CatSign::Minus, space);
    Vector a(cutoff + 1), b(cutoff + 1);
    for (int n = 0; n <= cutoff; ++n) {
        a[n] = cat_p.amplitudes[space.index(n, 0)];
        b[n] = cat_m.amplitudes[space.index(n, 0)];
    }
    return bures_from_fidelity(lossy_vector_fidelity(a, b, LossParams(R)));
}

FilteredPoint filtered_pair_point(const GainParams& gain, double R, int of_k, int cutoff) {
    FilteredPoint p{};
    double f = masked_pair_fidelity(gain, LossParams(R), cutoff, of_k, &p.success_prob_a,
                                    &p.success_prob_b);
    p.distance = bures_from_fidelity(f);
    return p;
}

SweepCurve sweep_distance(Family family, double param, const std::vector<double>& x_grid,
                          const SweepOptions& opts) {
    const int cutoff = opts.cutoff_override.value_or(family_cutoff(family, param, opts.tail_tol));
    const double n0 = family_n0(family, param, cutoff, opts.tail_tol);
    switch (family) {
        case Family::EquatorialMqs: {
            GainParams gain(param);
            return make_curve(family, param, std::nullopt, x_grid, opts, cutoff, n0,
                              [gain, cutoff](double R, SweepSample*) {
                                  return equatorial_pair_distance(gain, R, cutoff);
                              });
        }
        case Family::PolePair: {
            GainParams gain(param);
            return make_curve(family, param, std::nullopt, x_grid, opts, cutoff, n0,
                              [gain, cutoff](double R, SweepSample*) {
                                  return pole_pair_distance(gain, R, cutoff);
                              });
        }
        case Family::CoherentPointer:
            return make_curve(family, param, std::nullopt, x_grid, opts, cutoff, n0,
                              [param, cutoff](double R, SweepSample*) {
                                  return coherent_pointer_pair_distance(param, R, cutoff);
                              });
        case Family::CoherentMqs:
            return make_curve(family, param, std::nullopt, x_grid, opts, cutoff, n0,
                              [param, cutoff](double R, SweepSample*) {
                                  return coherent_mqs_pair_distance(param, R, cutoff);
                              });
        case Family::FilteredEquatorial:
            throw InvariantError("sweep_distance: the filtered family needs filtered_sweep(g, k, ...)");
    }
    throw InvariantError("sweep_distance: unknown family");
}

SweepCurve filtered_sweep(const GainParams& gain, int of_k, const std::vector<double>& x_grid,
                          const SweepOptions& opts) {
    if (of_k < 0) throw InvariantError("filtered_sweep: k must be >= 0");
    const int cutoff = opts.cutoff_override.value_or(
        family_cutoff(Family::FilteredEquatorial, gain.g, opts.tail_tol));
    const double n0 = family_n0(Family::FilteredEquatorial, gain.g, cutoff, opts.tail_tol);
    return make_curve(Family::FilteredEquatorial, gain.g, of_k, x_grid, opts, cutoff, n0,
                      [gain, of_k, cutoff](double R, SweepSample* s) {
                          FilteredPoint p = filtered_pair_point(gain, R, of_k, cutoff);
                          s->success_prob = 0.5 * (p.success_prob_a + p.success_prob_b);
                          return p.distance;
                      });
}

SweepCurve coherent_pointer_closed_curve(double alpha_sq, const std::vector<double>& x_grid) {
    SweepOptions opts;
    opts.cutoff_override = family_cutoff(Family::CoherentPointer, alpha_sq, opts.tail_tol);
    return make_curve(Family::CoherentPointer, alpha_sq, std::nullopt, x_grid, opts,
                      *opts.cutoff_override, alpha_sq, [alpha_sq](double R, SweepSample*) {
                          return coherent_pointer_distance_closed(alpha_sq, R);
                      });
}

SweepCurve coherent_mqs_closed_curve(double alpha_sq, const std::vector<double>& x_grid) {
    SweepOptions opts;
    opts.cutoff_override = family_cutoff(Family::CoherentMqs, alpha_sq, opts.tail_tol);
    return make_curve(Family::CoherentMqs, alpha_sq, std::nullopt, x_grid, opts,
                      *opts.cutoff_override, alpha_sq, [alpha_sq](double R, SweepSample*) {
                          return coherent_mqs_distance_closed(alpha_sq, R);
                      });
}

}  // namespace qiopa
