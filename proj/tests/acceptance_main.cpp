// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Every tolerance is pinned in code; sub-checks print indented.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qiopa/density.hpp"
#include "qiopa/linalg.hpp"
#include "qiopa/loss.hpp"
#include "qiopa/metrics.hpp"
#include "qiopa/ofilter.hpp"
#include "qiopa/rotation.hpp"
#include "qiopa/states.hpp"
#include "qiopa/sweep.hpp"

using namespace qiopa;

namespace {

int g_failures = 0;

struct Criterion {
    std::string line;
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const std::string& detail) {
        pass = pass && ok;
        details.push_back(std::string(ok ? "  ok   " : "  FAIL ") + detail);
    }

    void finish(int number) {
        std::printf("criterion %02d %-34s %s\n", number, line.c_str(), pass ? "PASS" : "FAIL");
        for (const auto& d : details) std::printf("%s\n", d.c_str());
        if (!pass) ++g_failures;
    }
};

std::string f9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: coherent-MQS single-photon collapse ------------------------

void criterion_1() {
    Criterion c{"coherent-MQS single-photon collapse"};
    const double closed_x1 = coherent_mqs_distance_closed(4.0, 0.25);  // x = R|a|^2 = 1
    c.check(std::fabs(closed_x1 - 0.0959) < 2e-3,
            "closed form at x=1: " + f9(closed_x1) + " vs 0.0959 (tol 2e-3)");
    for (double a2 : {1.0, 4.0}) {
        const int cutoff = required_cutoff_coherent(a2, 1e-10) + 5;
        const double numeric = coherent_mqs_pair_distance(a2, 1.0 / a2, cutoff);
        c.check(std::fabs(numeric - closed_x1) < 1e-6,
                "numeric pipeline at x=1, |alpha|^2=" + f9(a2) + ": " + f9(numeric) +
                    " vs closed " + f9(closed_x1) + " (tol 1e-6)");
    }
    c.finish(1);
}

// ---- criterion 2: pointer-state flatness --------------------------------------

void criterion_2() {
    Criterion c{"pointer-state flatness"};
    const double a2 = 4.0;
    const int cutoff = required_cutoff_coherent(a2, 1e-10) + 5;
    double min_closed = 2.0, worst_match = 0.0;
    for (int i = 0; i <= 60; ++i) {
        const double x = 0.9 * a2 * i / 60.0;
        const double closed = coherent_pointer_distance_closed(a2, x / a2);
        min_closed = std::min(min_closed, closed);
        worst_match =
            std::max(worst_match, std::fabs(coherent_pointer_pair_distance(a2, x / a2, cutoff) -
                                            closed));
    }
    c.check(min_closed > 0.9,
            "closed form stays above 0.9 up to x = 0.9<n>: min " + f9(min_closed));
    c.check(worst_match < 1e-6, "numeric oracle matches closed form: max dev " + f9(worst_match));
    c.finish(2);
}

// ---- criterion 3: phi-covariance chain ----------------------------------------

void criterion_3() {
    Criterion c{"phi-covariance chain at g=0.8"};
    auto t0 = std::chrono::steady_clock::now();
    GainParams gain(0.8);
    const int cutoff = required_cutoff_equatorial(gain);
    for (double r : {0.0, 0.25, 0.5, 0.9}) {
        const double d_pair = equatorial_pair_distance(gain, r, cutoff, 0.0);
        const double d_mqs = mqs_pair_distance(gain, r, cutoff);
        const double d_circ = equatorial_pair_distance(gain, r, cutoff, kPi / 2.0);
        c.check(std::fabs(d_mqs - d_pair) < 1e-6,
                "R=" + f9(r) + ": |D(Psi+,Psi-) - D(Phi+,Phi-)| = " + f9(std::fabs(d_mqs - d_pair)));
        c.check(std::fabs(d_circ - d_pair) < 1e-6,
                "R=" + f9(r) + ": |D(PhiR,PhiL) - D(Phi+,Phi-)| = " + f9(std::fabs(d_circ - d_pair)));
    }
    // one dense full-scale cross-check of the structured routes
    {
        const double r = 0.25;
        TwoModeSpace space(cutoff, BasisLabel::circular());
        DensityOperator a = density_from_pure(
            amplified_equatorial_state(gain, EquatorialPhase(kPi / 2.0), space).normalized());
        DensityOperator b = density_from_pure(
            amplified_equatorial_partner(gain, EquatorialPhase(kPi / 2.0), space).normalized());
        const double dense =
            bures_distance(apply_loss(a, LossParams(r)), apply_loss(b, LossParams(r)));
        const double fast = equatorial_pair_distance(gain, r, cutoff, kPi / 2.0);
        c.check(std::fabs(dense - fast) < 1e-6,
                "dense route spot check at R=0.25: |dense - structured| = " +
                    f9(std::fabs(dense - fast)));
    }
    c.details.push_back("  info  chain block took " + f9(seconds_since(t0)) + " s at cutoff " +
                        std::to_string(cutoff));
    c.finish(3);
}

// ---- criterion 4: MQS linearity identity --------------------------------------

void criterion_4() {
    Criterion c{"MQS linearity identity"};
    for (double g : {0.4, 0.8}) {
        GainParams gain(g);
        const int cutoff = required_cutoff_equatorial_layers(gain, 1e-9);
        TwoModeSpace pm(cutoff, BasisLabel::plus_minus());
        PureState plus = amplified_equatorial_state(gain, EquatorialPhase(0.0), pm).normalized();
        PureState minus =
            amplified_equatorial_partner(gain, EquatorialPhase(0.0), pm).normalized();
        PureState psi_p = mqs_superposition(plus, minus, RelativeSign::PlusI);
        PureState psi_m = mqs_superposition(plus, minus, RelativeSign::MinusI);

        TwoModeSpace rl(cutoff, BasisLabel::circular());
        PureState phi_r = expressed_in(
            amplified_equatorial_state(gain, EquatorialPhase(kPi / 2.0), rl).normalized(),
            BasisLabel::plus_minus());
        TwoModeSpace lr(cutoff, BasisLabel::equatorial(3.0 * kPi / 2.0));
        PureState phi_l = expressed_in(
            amplified_equatorial_state(gain, EquatorialPhase(3.0 * kPi / 2.0), lr).normalized(),
            BasisLabel::plus_minus());

        const double f_r = std::abs(inner_product(psi_m, phi_r));
        const double f_l = std::abs(inner_product(psi_p, phi_l));
        c.check(f_r > 1.0 - 1e-8,
                "g=" + f9(g) + ": fidelity(Psi-, Phi^R) = 1 - " + f9(1.0 - f_r));
        c.check(f_l > 1.0 - 1e-8,
                "g=" + f9(g) + ": fidelity(Psi+, Phi^L) = 1 - " + f9(1.0 - f_l));
    }
    c.finish(4);
}

// ---- criterion 5: slow decay and curve shape ----------------------------------

std::vector<size_t> inflexion_indices(const SweepCurve& curve) {
    std::vector<double> d2;
    const auto& s = curve.samples;
    for (size_t i = 1; i + 1 < s.size(); ++i) {
        const double h1 = s[i].x - s[i - 1].x;
        const double h2 = s[i + 1].x - s[i].x;
        d2.push_back(2.0 * (h1 * s[i + 1].value - (h1 + h2) * s[i].value + h2 * s[i - 1].value) /
                     (h1 * h2 * (h1 + h2)));
    }
    std::vector<size_t> flips;
    for (size_t i = 0; i + 1 < d2.size(); ++i)
        if (d2[i] != 0.0 && d2[i + 1] != 0.0 && std::signbit(d2[i]) != std::signbit(d2[i + 1]))
            flips.push_back(i + 1);
    return flips;
}

SweepCurve g08_curve() {
    SweepOptions opts;
    opts.threads = 2;
    const double n0 =
        family_n0(Family::EquatorialMqs, 0.8, family_cutoff(Family::EquatorialMqs, 0.8));
    return sweep_distance(Family::EquatorialMqs, 0.8, default_x_grid(n0), opts);
}

void criterion_5(const SweepCurve& curve) {
    Criterion c{"slow-decay ordering, curve shape"};
    c.check(std::fabs(curve.samples.front().value - 1.0) < 1e-8,
            "D_q(0) = " + f9(curve.samples.front().value));

    bool ordering = true;
    double min_margin = 2.0;
    for (const auto& s : curve.samples) {
        if (s.x <= 0.0 || s.x > 2.0) continue;
        const double reference = coherent_mqs_distance_closed(4.0, s.x / 4.0);
        ordering = ordering && s.value > reference;
        min_margin = std::min(min_margin, s.value - reference);
    }
    c.check(ordering, "D_q(x) > coherent-MQS closed form on (0, 2]: min margin " + f9(min_margin));

    bool monotone = true;
    for (size_t i = 1; i < curve.samples.size(); ++i)
        monotone = monotone && curve.samples[i].value <= curve.samples[i - 1].value + 1e-10;
    c.check(monotone, "monotone nonincreasing over the default grid");

    auto flips = inflexion_indices(curve);
    c.check(flips.size() == 1, "single inflexion (found " + std::to_string(flips.size()) + ")");
    if (flips.size() == 1) {
        const double d_at = curve.samples[flips[0]].value;
        c.check(d_at > 0.45 && d_at < 0.75,
                "D_q at the inflexion = " + f9(d_at) + " in [0.45, 0.75]");
    }
    c.finish(5);
}

// ---- criterion 6: pole pair decays faster --------------------------------------

void criterion_6() {
    Criterion c{"pole-pair faster decay"};
    GainParams gain(0.8);
    const int ce = required_cutoff_equatorial(gain);
    const int cp = required_cutoff_pole(gain);
    const double n0 = family_n0(Family::EquatorialMqs, 0.8, ce);
    const double d_eq = equatorial_pair_distance(gain, 1.0 / n0, ce);
    const double d_pole = pole_pair_distance(gain, 1.0 / n0, cp);
    c.check(d_pole < d_eq, "at x=1: pole " + f9(d_pole) + " < equatorial " + f9(d_eq));
    c.finish(6);
}

// ---- criterion 7: caption mean photon numbers ----------------------------------

void criterion_7() {
    Criterion c{"caption mean photon numbers"};
    struct Row {
        double g, target, tol;
        const char* note;
    };
    for (const Row& row : {Row{0.8, 4.0, 0.5, ""}, Row{1.1, 8.0, 0.7, ""},
                           Row{1.3, 12.0, 1.0, " (extended)"}}) {
        GainParams gain(row.g);
        const int cutoff = required_cutoff_equatorial(gain);
        TwoModeSpace space(cutoff, BasisLabel::plus_minus());
        const double mean =
            amplified_equatorial_state(gain, EquatorialPhase(0.0), space).mean_total_photons();
        c.check(std::fabs(mean - row.target) < row.tol,
                "g=" + f9(row.g) + ": <n> = " + f9(mean) + " vs " + f9(row.target) + " +- " +
                    f9(row.tol) + row.note);
    }
    c.finish(7);
}

// ---- criterion 8: orthogonality-filter enhancement ------------------------------

void criterion_8() {
    Criterion c{"orthogonality-filter enhancement"};
    GainParams gain(0.8);
    const int cutoff = required_cutoff_equatorial(gain);
    const double n0 = family_n0(Family::FilteredEquatorial, 0.8, cutoff);

    std::vector<FilteredPoint> pts;
    for (int k = 0; k <= 5; ++k) pts.push_back(filtered_pair_point(gain, 1.0 / n0, k, cutoff));

    bool nondecreasing = true;
    std::string seq;
    for (int k = 0; k <= 5; ++k) {
        if (k > 0) nondecreasing = nondecreasing && pts[k].distance >= pts[k - 1].distance;
        seq += (k ? ", " : "") + f9(pts[k].distance);
    }
    c.check(nondecreasing, "filtered distance nondecreasing over k=0..5 at x=1: [" + seq + "]");
    bool even_mono = pts[0].distance <= pts[2].distance && pts[2].distance <= pts[4].distance;
    bool odd_mono = pts[1].distance <= pts[3].distance && pts[3].distance <= pts[5].distance;
    c.details.push_back(std::string("  info  within each parity class the sequence is ") +
                        (even_mono && odd_mono ? "nondecreasing" : "NOT nondecreasing") +
                        " (the k->k+1 dips alternate with the parity of k)");

    bool decreasing = true;
    std::string probs;
    for (int k = 0; k <= 5; ++k) {
        if (k > 0) decreasing = decreasing && pts[k].success_prob_a < pts[k - 1].success_prob_a;
        probs += (k ? ", " : "") + f9(pts[k].success_prob_a);
    }
    c.check(decreasing, "success probability strictly decreasing: [" + probs + "]");

    int k_found = -1;
    double d_found = 0.0;
    for (int k = 0; k <= 8 && k_found < 0; ++k) {
        FilteredPoint p = filtered_pair_point(gain, 0.9, k, cutoff);
        if (p.distance > 0.5) {
            k_found = k;
            d_found = p.distance;
        }
    }
    c.check(k_found >= 0, "desk-scale surrogate at R=0.9: k=" + std::to_string(k_found) +
                              " reaches D = " + f9(d_found) + " > 0.5");
    c.finish(8);
}

// ---- criterion 9: randomized channel/metric invariants ---------------------------

void criterion_9() {
    Criterion c{"channel/metric invariant suite"};
    auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(424242);
    std::normal_distribution<double> gauss;
    int cases = 0;

    // Kraus completeness
    double worst = 0.0;
    for (int cutoff : {6, 14}) {
        for (int i = 0; i <= 10; ++i) {
            auto ks = loss_kraus(cutoff, LossParams(i / 10.0));
            Matrix sum = Matrix::Zero(cutoff + 1, cutoff + 1);
            for (const auto& k : ks) sum += k.adjoint() * k;
            worst = std::max(worst,
                             (sum - Matrix::Identity(cutoff + 1, cutoff + 1)).cwiseAbs().maxCoeff());
            ++cases;
        }
    }
    c.check(worst < 1e-10, "Kraus completeness (22 grids): max dev " + f9(worst));

    TwoModeSpace space(3, BasisLabel::poles());
    const int d = space.dimension();
    auto rand_dm = [&](int rank) {
        Matrix g(d, rank);
        for (int i = 0; i < g.size(); ++i) g.data()[i] = Complex(gauss(rng), gauss(rng));
        Matrix m = g * g.adjoint();
        m /= m.trace().real();
        return DensityOperator(space, 0.5 * (m + m.adjoint().eval()));
    };

    // trace preservation + positivity across the loss grid
    worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        DensityOperator rho = rand_dm(d);
        for (int i = 0; i <= 10; ++i) {
            DensityOperator out = apply_loss(rho, LossParams(i / 10.0));
            worst = std::max(worst, std::fabs(out.trace_real() - 1.0));
            ++cases;
        }
    }
    c.check(worst < 1e-9, "trace preservation (110 cases): max dev " + f9(worst));

    // composition law
    worst = 0.0;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        DensityOperator rho = rand_dm(d);
        const double r1 = uni(rng), r2 = uni(rng);
        DensityOperator two = apply_loss(apply_loss(rho, LossParams(r1)), LossParams(r2));
        DensityOperator one = apply_loss(rho, LossParams(1.0 - (1.0 - r1) * (1.0 - r2)));
        worst = std::max(worst, (two.matrix - one.matrix).cwiseAbs().maxCoeff());
        ++cases;
    }
    c.check(worst < 1e-8, "loss composition (20 cases): max dev " + f9(worst));

    // loss/rotation commutation on layer-confined pure states
    worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Vector amps = Vector::Zero(d);
        for (int n = 0; n <= 3; ++n)
            for (int m = 0; n + m <= 3; ++m)
                amps[space.index(n, m)] = Complex(gauss(rng), gauss(rng));
        DensityOperator rho = density_from_pure(PureState(space, amps / amps.norm()));
        double q0 = gauss(rng), q1 = gauss(rng), q2 = gauss(rng), q3 = gauss(rng);
        double nq = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
        Eigen::Matrix2cd u2;
        u2 << Complex(q0 / nq, q1 / nq), Complex(q2 / nq, q3 / nq),
            Complex(-q2 / nq, q3 / nq), Complex(q0 / nq, -q1 / nq);
        Matrix lifted = lift_mode_unitary(space, ModeUnitary(u2));
        const double r = uni(rng);
        DensityOperator lr(space,
                           (lifted * apply_loss(rho, LossParams(r)).matrix * lifted.adjoint())
                               .eval());
        DensityOperator rl = apply_loss(
            DensityOperator(space, (lifted * rho.matrix * lifted.adjoint()).eval()),
            LossParams(r));
        worst = std::max(worst, (lr.matrix - rl.matrix).cwiseAbs().maxCoeff());
        ++cases;
    }
    c.check(worst < 1e-8, "loss/rotation commutation (20 cases): max dev " + f9(worst));

    // fidelity symmetry and the two algebraic routes
    double worst_sym = 0.0, worst_routes = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        DensityOperator rho = rand_dm(d);
        DensityOperator sig = rand_dm(trial % 2 ? d : 6);
        const double f = fidelity(rho, sig);
        worst_sym = std::max(worst_sym, std::fabs(f - fidelity(sig, rho)));
        worst_routes = std::max(worst_routes, std::fabs(f - fidelity_product_spectrum(rho, sig)));
        cases += 2;
    }
    c.check(worst_sym < 1e-8, "fidelity symmetry (30 cases): max dev " + f9(worst_sym));
    c.check(worst_routes < 1e-8,
            "sqrt-route vs product-spectrum route (30 cases): max dev " + f9(worst_routes));

    const double secs = seconds_since(t0);
    c.check(cases >= 100 && secs < 300.0,
            std::to_string(cases) + " randomized cases in " + f9(secs) + " s (budget 300 s)");
    c.finish(9);
}

// ---- criterion 10: cutoff convergence --------------------------------------------

void criterion_10() {
    Criterion c{"cutoff convergence (+5)"};
    GainParams gain(0.8);
    const int ce = required_cutoff_equatorial(gain);
    const int cp = required_cutoff_pole(gain);
    const double n0 = family_n0(Family::EquatorialMqs, 0.8, ce);

    double worst = 0.0;
    for (double x : {0.5, 1.0, 2.0}) {
        worst = std::max(worst, std::fabs(equatorial_pair_distance(gain, x / n0, ce) -
                                          equatorial_pair_distance(gain, x / n0, ce + 5)));
    }
    c.check(worst < 1e-6, "equatorial D_q at x in {0.5, 1, 2}: max shift " + f9(worst));

    const double dp = std::fabs(pole_pair_distance(gain, 1.0 / n0, cp) -
                                pole_pair_distance(gain, 1.0 / n0, cp + 5));
    c.check(dp < 1e-6, "pole pair at x=1: shift " + f9(dp));

    const double dm = std::fabs(mqs_pair_distance(gain, 0.25, ce) -
                                mqs_pair_distance(gain, 0.25, ce + 5));
    c.check(dm < 1e-6, "macro-qubit superpositions at R=0.25: shift " + f9(dm));

    double worst_f = 0.0;
    for (int k : {0, 5}) {
        worst_f = std::max(worst_f,
                           std::fabs(filtered_pair_point(gain, 1.0 / n0, k, ce).distance -
                                     filtered_pair_point(gain, 1.0 / n0, k, ce + 5).distance));
    }
    c.check(worst_f < 1e-6, "filtered pair at x=1, k in {0, 5}: max shift " + f9(worst_f));

    const int cc = required_cutoff_coherent(4.0);
    double worst_c = 0.0;
    worst_c = std::max(worst_c, std::fabs(coherent_mqs_pair_distance(4.0, 0.25, cc) -
                                          coherent_mqs_pair_distance(4.0, 0.25, cc + 5)));
    worst_c = std::max(worst_c, std::fabs(coherent_pointer_pair_distance(4.0, 0.25, cc) -
                                          coherent_pointer_pair_distance(4.0, 0.25, cc + 5)));
    c.check(worst_c < 1e-6, "coherent families at x=1: max shift " + f9(worst_c));
    c.finish(10);
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    std::printf("acceptance suite (library %s)\n", QIOPA_VERSION);

    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    SweepCurve curve = g08_curve();
    criterion_5(curve);
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();

    std::printf("total: %d of 10 criteria failed (%.1f s)\n", g_failures, seconds_since(t0));
    return g_failures;
}
