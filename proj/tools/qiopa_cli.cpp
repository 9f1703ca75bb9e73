// Command-line front end: reproduces the decoherence curves (fig2a, fig2b,
// fig3a), runs generic sweeps, and validates the numerical invariants.
// Data files are byte-stable for a fixed configuration; the manifest holds
// the clock and timings.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qiopa/density.hpp"
#include "qiopa/io.hpp"
#include "qiopa/linalg.hpp"
#include "qiopa/loss.hpp"
#include "qiopa/metrics.hpp"
#include "qiopa/ofilter.hpp"
#include "qiopa/rotation.hpp"
#include "qiopa/states.hpp"
#include "qiopa/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace qiopa;

namespace {

struct RunConfig {
    std::string command;
    std::vector<double> g_list;
    std::vector<double> alpha2_list;
    std::vector<int> k_list;
    std::string family = "equatorial-mqs";
    double x_max = -1.0;  // <0: default grid
    int x_count = 60;
    int cutoff_override = 0;  // 0: cutoff rule
    double tail_tol = kDefaultTailTol;
    std::string out_dir = "out";
    std::string format = "csv";
    int threads = 1;
};

json config_json(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    j["g"] = c.g_list;
    j["alpha2"] = c.alpha2_list;
    j["k"] = c.k_list;
    j["family"] = c.family;
    if (c.x_max >= 0.0) {
        j["x_max"] = c.x_max;
        j["x_count"] = c.x_count;
        j["x_spacing"] = "uniform";
    } else {
        j["x_spacing"] = "default (60 uniform + 20 log near endpoint)";
    }
    if (c.cutoff_override > 0) j["cutoff"] = c.cutoff_override;
    j["tail_tol"] = c.tail_tol;
    j["out"] = c.out_dir;
    j["format"] = c.format;
    j["threads"] = c.threads;
    return j;
}

std::string num_slug(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    std::string s = buf;
    for (char& ch : s)
        if (ch == '.') ch = '_';
    return s;
}

std::vector<double> grid_for(const RunConfig& cfg, double n0) {
    if (cfg.x_max < 0.0) return default_x_grid(n0);
    const double hi = std::min(cfg.x_max, n0);
    const int count = std::max(2, cfg.x_count);
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) xs.push_back(hi * i / (count - 1));
    return xs;
}

SweepOptions options_for(const RunConfig& cfg) {
    SweepOptions opts;
    if (cfg.cutoff_override > 0) opts.cutoff_override = cfg.cutoff_override;
    opts.tail_tol = cfg.tail_tol;
    opts.threads = cfg.threads;
    return opts;
}

std::string utc_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

class Emitter {
  public:
    explicit Emitter(const RunConfig& cfg) : cfg_(cfg) {
        manifest_["command"] = cfg.command;
        manifest_["config"] = config_json(cfg);
        manifest_["library_version"] = QIOPA_VERSION;
        manifest_["generated_at"] = utc_now();
        manifest_["curves"] = json::array();
    }

    void add(const std::string& stem, const SweepCurve& curve, double wall_ms,
             const std::string& note = "") {
        json entry;
        entry["family"] = family_name(curve.family);
        entry["param"] = curve.param;
        if (curve.of_k) entry["k"] = *curve.of_k;
        entry["cutoff"] = curve.cutoff;
        entry["n0"] = curve.n0;
        entry["tail_tol"] = curve.tail_tol;
        entry["points"] = curve.samples.size();
        entry["wall_ms"] = wall_ms;
        if (!note.empty()) entry["note"] = note;
        if (cfg_.format == "csv") {
            const std::string file = stem + ".csv";
            write_file_atomic(fs::path(cfg_.out_dir) / file, curve_to_csv(curve));
            entry["file"] = file;
        } else {
            json jc = curve_to_json(curve);
            if (!note.empty()) jc["note"] = note;
            jc["id"] = stem;
            data_curves_.push_back(std::move(jc));
            entry["id"] = stem;
        }
        manifest_["curves"].push_back(std::move(entry));
    }

    void finish() {
        if (cfg_.format == "json") {
            json doc;
            doc["command"] = cfg_.command;
            doc["curves"] = data_curves_;
            write_file_atomic(fs::path(cfg_.out_dir) / (cfg_.command + "_data.json"),
                              doc.dump(2) + "\n");
        }
        write_file_atomic(fs::path(cfg_.out_dir) / "manifest.json", manifest_.dump(2) + "\n");
    }

  private:
    RunConfig cfg_;
    json manifest_;
    json data_curves_ = json::array();
};

template <typename Fn>
SweepCurve timed(Fn&& fn, double* wall_ms) {
    auto t0 = std::chrono::steady_clock::now();
    SweepCurve c = fn();
    *wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

int run_fig2a(const RunConfig& cfg) {
    Emitter emit(cfg);
    for (double g : cfg.g_list) {
        double ms = 0.0;
        const int cutoff = cfg.cutoff_override > 0
                               ? cfg.cutoff_override
                               : family_cutoff(Family::EquatorialMqs, g, cfg.tail_tol);
        const double n0 = family_n0(Family::EquatorialMqs, g, cutoff, cfg.tail_tol);
        SweepCurve c = timed(
            [&] {
                return sweep_distance(Family::EquatorialMqs, g, grid_for(cfg, n0),
                                      options_for(cfg));
            },
            &ms);
        emit.add("fig2a_equatorial_g" + num_slug(g), c, ms);
    }
    for (double a2 : cfg.alpha2_list) {
        for (bool mqs : {true, false}) {
            const Family fam = mqs ? Family::CoherentMqs : Family::CoherentPointer;
            const char* tag = mqs ? "cohmqs" : "pointer";
            double ms = 0.0;
            SweepCurve numeric = timed(
                [&] { return sweep_distance(fam, a2, grid_for(cfg, a2), options_for(cfg)); },
                &ms);
            emit.add(std::string("fig2a_") + tag + "_numeric_a2_" + num_slug(a2), numeric, ms,
                     "numeric Fock-space pipeline");
            double ms2 = 0.0;
            SweepCurve closed = timed(
                [&] {
                    return mqs ? coherent_mqs_closed_curve(a2, grid_for(cfg, a2))
                               : coherent_pointer_closed_curve(a2, grid_for(cfg, a2));
                },
                &ms2);
            emit.add(std::string("fig2a_") + tag + "_closed_a2_" + num_slug(a2), closed, ms2,
                     "closed form");
        }
    }
    emit.finish();
    return 0;
}

int run_fig2b(const RunConfig& cfg) {
    Emitter emit(cfg);
    for (double g : cfg.g_list) {
        double ms = 0.0;
        const int cutoff = cfg.cutoff_override > 0
                               ? cfg.cutoff_override
                               : family_cutoff(Family::PolePair, g, cfg.tail_tol);
        const double n0 = family_n0(Family::PolePair, g, cutoff, cfg.tail_tol);
        SweepCurve c = timed(
            [&] {
                return sweep_distance(Family::PolePair, g, grid_for(cfg, n0), options_for(cfg));
            },
            &ms);
        emit.add("fig2b_pole_g" + num_slug(g), c, ms);
    }
    emit.finish();
    return 0;
}

// Filtered curves stop at min(4, n0) by default: beyond that the success
// probability of the larger thresholds falls under the 1e-12 floor where
// the post-selected state is undefined. An explicit --x-max overrides.
RunConfig filtered_grid_config(const RunConfig& cfg, double n0) {
    RunConfig adjusted = cfg;
    if (adjusted.x_max < 0.0) adjusted.x_max = std::min(4.0, n0);
    return adjusted;
}

int run_fig3a(const RunConfig& cfg) {
    Emitter emit(cfg);
    for (double g : cfg.g_list) {
        const int cutoff = cfg.cutoff_override > 0
                               ? cfg.cutoff_override
                               : family_cutoff(Family::FilteredEquatorial, g, cfg.tail_tol);
        const double n0 = family_n0(Family::FilteredEquatorial, g, cutoff, cfg.tail_tol);
        const RunConfig gcfg = filtered_grid_config(cfg, n0);
        for (int k : cfg.k_list) {
            double ms = 0.0;
            SweepCurve c = timed(
                [&] {
                    return filtered_sweep(GainParams(g), k, grid_for(gcfg, n0),
                                          options_for(cfg));
                },
                &ms);
            emit.add("fig3a_filtered_g" + num_slug(g) + "_k" + std::to_string(k), c, ms);
        }
    }
    emit.finish();
    return 0;
}

int run_sweep(const RunConfig& cfg) {
    Emitter emit(cfg);
    Family fam;
    if (cfg.family == "equatorial-mqs") fam = Family::EquatorialMqs;
    else if (cfg.family == "pole-pair") fam = Family::PolePair;
    else if (cfg.family == "coherent-pointer") fam = Family::CoherentPointer;
    else if (cfg.family == "coherent-mqs") fam = Family::CoherentMqs;
    else if (cfg.family == "filtered") fam = Family::FilteredEquatorial;
    else throw CLI::ValidationError("--family", "unknown family " + cfg.family);

    const bool coherent = fam == Family::CoherentPointer || fam == Family::CoherentMqs;
    const auto& params = coherent ? cfg.alpha2_list : cfg.g_list;
    for (double p : params) {
        const int cutoff = cfg.cutoff_override > 0 ? cfg.cutoff_override
                                                   : family_cutoff(fam, p, cfg.tail_tol);
        const double n0 = family_n0(fam, p, cutoff, cfg.tail_tol);
        if (fam == Family::FilteredEquatorial) {
            const RunConfig gcfg = filtered_grid_config(cfg, n0);
            for (int k : cfg.k_list) {
                double ms = 0.0;
                SweepCurve c = timed(
                    [&] {
                        return filtered_sweep(GainParams(p), k, grid_for(gcfg, n0),
                                              options_for(cfg));
                    },
                    &ms);
                emit.add("sweep_filtered_g" + num_slug(p) + "_k" + std::to_string(k), c, ms);
            }
        } else {
            double ms = 0.0;
            SweepCurve c = timed(
                [&] { return sweep_distance(fam, p, grid_for(cfg, n0), options_for(cfg)); }, &ms);
            emit.add("sweep_" + family_name(fam) + "_" + num_slug(p), c, ms);
        }
    }
    emit.finish();
    return 0;
}

// ---- validate ----------------------------------------------------------------

struct Report {
    json checks = json::array();
    bool all_pass = true;

    void add(const std::string& name, bool pass, const std::string& detail) {
        json c;
        c["name"] = name;
        c["pass"] = pass;
        c["detail"] = detail;
        checks.push_back(std::move(c));
        all_pass = all_pass && pass;
        std::printf("%-44s %s  %s\n", name.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    }
};

std::string fmt(double v) { return format_g9(v); }

int run_validate(const RunConfig& cfg) {
    Report rep;
    std::mt19937_64 rng(20080521);

    // Kraus completeness
    {
        double worst = 0.0;
        for (double r = 0.0; r <= 1.0; r += 0.1) {
            auto ks = loss_kraus(12, LossParams(r));
            Matrix sum = Matrix::Zero(13, 13);
            for (const auto& k : ks) sum += k.adjoint() * k;
            worst = std::max(worst, (sum - Matrix::Identity(13, 13)).cwiseAbs().maxCoeff());
        }
        rep.add("kraus completeness", worst < 1e-10, "max deviation " + fmt(worst));
    }

    // loss invariants on random states
    {
        TwoModeSpace space(3, BasisLabel::poles());
        std::normal_distribution<double> gauss;
        double worst_tr = 0.0, worst_comp = 0.0, worst_comm = 0.0;
        for (int trial = 0; trial < 8; ++trial) {
            Matrix g(space.dimension(), space.dimension());
            for (int i = 0; i < g.size(); ++i) g.data()[i] = Complex(gauss(rng), gauss(rng));
            Matrix m = g * g.adjoint();
            m /= m.trace().real();
            DensityOperator rho(space, 0.5 * (m + m.adjoint().eval()));
            for (double r : {0.0, 0.3, 0.7, 1.0}) {
                DensityOperator out = apply_loss(rho, LossParams(r));
                worst_tr = std::max(worst_tr, std::fabs(out.trace_real() - 1.0));
            }
            DensityOperator ab =
                apply_loss(apply_loss(rho, LossParams(0.25)), LossParams(0.4));
            DensityOperator once = apply_loss(rho, LossParams(1.0 - 0.75 * 0.6));
            worst_comp =
                std::max(worst_comp, (ab.matrix - once.matrix).cwiseAbs().maxCoeff());

            // rotation commutation on a layer-confined state
            Vector amps = Vector::Zero(space.dimension());
            for (int n = 0; n <= 3; ++n)
                for (int mdx = 0; n + mdx <= 3; ++mdx)
                    amps[space.index(n, mdx)] = Complex(gauss(rng), gauss(rng));
            DensityOperator pure =
                density_from_pure(PureState(space, amps / amps.norm()));
            Eigen::Matrix2cd h;
            h << 1, 1, 1, -1;
            Matrix lifted = lift_mode_unitary(space, ModeUnitary(h / std::sqrt(2.0)));
            DensityOperator lr(space,
                               (lifted * apply_loss(pure, LossParams(0.35)).matrix *
                                lifted.adjoint())
                                   .eval());
            DensityOperator rl = apply_loss(
                DensityOperator(space, (lifted * pure.matrix * lifted.adjoint()).eval()),
                LossParams(0.35));
            worst_comm = std::max(worst_comm, (lr.matrix - rl.matrix).cwiseAbs().maxCoeff());
        }
        rep.add("loss trace preservation", worst_tr < 1e-9, "max deviation " + fmt(worst_tr));
        rep.add("loss composition law", worst_comp < 1e-8, "max deviation " + fmt(worst_comp));
        rep.add("loss/rotation commutation", worst_comm < 1e-8,
                "max deviation " + fmt(worst_comm));
    }

    // fidelity routes
    {
        TwoModeSpace space(3, BasisLabel::poles());
        std::normal_distribution<double> gauss;
        double worst_sym = 0.0, worst_routes = 0.0;
        for (int trial = 0; trial < 8; ++trial) {
            auto rand_dm = [&](int rank) {
                Matrix g(space.dimension(), rank);
                for (int i = 0; i < g.size(); ++i) g.data()[i] = Complex(gauss(rng), gauss(rng));
                Matrix m = g * g.adjoint();
                m /= m.trace().real();
                return DensityOperator(space, 0.5 * (m + m.adjoint().eval()));
            };
            DensityOperator rho = rand_dm(space.dimension());
            DensityOperator sig = rand_dm(6);
            double f = fidelity(rho, sig);
            worst_sym = std::max(worst_sym, std::fabs(f - fidelity(sig, rho)));
            worst_routes =
                std::max(worst_routes, std::fabs(f - fidelity_product_spectrum(rho, sig)));
        }
        rep.add("fidelity symmetry", worst_sym < 1e-8, "max deviation " + fmt(worst_sym));
        rep.add("fidelity two-route agreement", worst_routes < 1e-8,
                "max deviation " + fmt(worst_routes));
    }

    // state-family invariants at the configured gains
    for (double g : cfg.g_list) {
        try {
            const int cutoff = cfg.cutoff_override > 0
                                   ? cfg.cutoff_override
                                   : required_cutoff_equatorial(GainParams(g), cfg.tail_tol);
            const double tail = equatorial_truncation_tail(GainParams(g), cutoff);
            if (!(tail < cfg.tail_tol)) {
                throw TruncationError("cutoff " + std::to_string(cutoff) + " leaves tail " +
                                      fmt(tail));
            }
            const double d0 = equatorial_pair_distance(GainParams(g), 0.0, cutoff);
            rep.add("zero-loss orthogonality g=" + num_slug(g), std::fabs(d0 - 1.0) < 1e-8,
                    "D(0) = " + fmt(d0));
        } catch (const TruncationError& e) {
            rep.add("truncation g=" + num_slug(g), false, e.what());
        }
    }

    // covariance chain at the first gain
    if (!cfg.g_list.empty()) {
        const double g = cfg.g_list.front();
        try {
            const int cutoff = cfg.cutoff_override > 0
                                   ? cfg.cutoff_override
                                   : required_cutoff_equatorial(GainParams(g), cfg.tail_tol);
            if (!(equatorial_truncation_tail(GainParams(g), cutoff) < cfg.tail_tol)) {
                throw TruncationError("equatorial state does not fit cutoff");
            }
            double worst = 0.0;
            for (double r : {0.0, 0.25, 0.5, 0.9}) {
                const double d_pair = equatorial_pair_distance(GainParams(g), r, cutoff);
                const double d_mqs = mqs_pair_distance(GainParams(g), r, cutoff);
                worst = std::max(worst, std::fabs(d_pair - d_mqs));
            }
            rep.add("covariance chain g=" + num_slug(g), worst < 1e-6,
                    "max |D_mqs - D_pair| = " + fmt(worst));
        } catch (const TruncationError& e) {
            rep.add("covariance chain g=" + num_slug(g), false, e.what());
        }
    }

    // convergence: representative distances at cutoff and cutoff + 5
    for (double g : cfg.g_list) {
        try {
            const int ce = cfg.cutoff_override > 0
                               ? cfg.cutoff_override
                               : required_cutoff_equatorial(GainParams(g), cfg.tail_tol);
            if (!(equatorial_truncation_tail(GainParams(g), ce) < cfg.tail_tol)) {
                throw TruncationError("equatorial state does not fit cutoff " +
                                      std::to_string(ce));
            }
            const double n0 = family_n0(Family::EquatorialMqs, g, ce, cfg.tail_tol);
            const double x = std::min(1.0, 0.5 * n0);
            const double de = equatorial_pair_distance(GainParams(g), x / n0, ce);
            const double de5 = equatorial_pair_distance(GainParams(g), x / n0, ce + 5);
            const int cp = required_cutoff_pole(GainParams(g), cfg.tail_tol);
            const double dp = pole_pair_distance(GainParams(g), x / n0, cp);
            const double dp5 = pole_pair_distance(GainParams(g), x / n0, cp + 5);
            const double worst = std::max(std::fabs(de - de5), std::fabs(dp - dp5));
            rep.add("cutoff convergence g=" + num_slug(g), worst < 1e-6,
                    "max shift " + fmt(worst));
        } catch (const TruncationError& e) {
            rep.add("cutoff convergence g=" + num_slug(g), false, e.what());
        }
    }

    // tightened tail tolerance: cutoffs grow, distances move below 1e-6
    if (!cfg.g_list.empty()) {
        const double g = cfg.g_list.front();
        const double tight = cfg.tail_tol * 1e-2;
        const int c0 = required_cutoff_equatorial(GainParams(g), cfg.tail_tol);
        const int c1 = required_cutoff_equatorial(GainParams(g), tight);
        const double n0 = family_n0(Family::EquatorialMqs, g, c1, tight);
        const double d0 = equatorial_pair_distance(GainParams(g), 1.0 / n0, c0);
        const double d1 = equatorial_pair_distance(GainParams(g), 1.0 / n0, c1);
        rep.add("tail tolerance tightening", c1 >= c0 && std::fabs(d1 - d0) < 1e-6,
                "cutoff " + std::to_string(c0) + " -> " + std::to_string(c1) + ", shift " +
                    fmt(std::fabs(d1 - d0)));
    }

    json doc;
    doc["command"] = "validate";
    doc["config"] = config_json(cfg);
    doc["checks"] = rep.checks;
    doc["all_pass"] = rep.all_pass;
    write_file_atomic(fs::path(cfg.out_dir) / "validate_report.json", doc.dump(2) + "\n");
    std::printf("validate: %s\n", rep.all_pass ? "all invariants pass" : "FAILURES present");
    return rep.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Macro-qubit decoherence laboratory"};
    app.add_option("--command", cfg.command, "fig2a|fig2b|fig3a|sweep|validate")
        ->required()
        ->check(CLI::IsMember({"fig2a", "fig2b", "fig3a", "sweep", "validate"}));
    app.add_option("--g", cfg.g_list, "parametric gain (repeatable)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--alpha2", cfg.alpha2_list, "|alpha|^2 reference (repeatable)")
        ->check(CLI::PositiveNumber);
    app.add_option("--k", cfg.k_list, "orthogonality-filter threshold (repeatable)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--family", cfg.family,
                   "sweep family: equatorial-mqs|pole-pair|coherent-pointer|coherent-mqs|filtered");
    app.add_option("--x-max", cfg.x_max, "uniform grid upper end (default: 60+20 composite grid)");
    app.add_option("--x-count", cfg.x_count, "uniform grid sample count")->check(CLI::Range(2, 100000));
    app.add_option("--cutoff", cfg.cutoff_override, "per-mode cutoff override (>= 1)")
        ->check(CLI::Range(1, 100000));
    app.add_option("--tail-tol", cfg.tail_tol, "cutoff-rule tail tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", cfg.out_dir, "output directory");
    app.add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", cfg.threads, "worker threads for sweep points")
        ->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (cfg.g_list.empty()) cfg.g_list = cfg.command == "fig3a" ? std::vector<double>{0.8}
                                                                : std::vector<double>{0.8, 1.1, 1.3};
    if (cfg.alpha2_list.empty()) cfg.alpha2_list = {1.0, 4.0};
    if (cfg.k_list.empty()) cfg.k_list = {0, 1, 2, 3, 4, 5};

    try {
        if (cfg.command == "fig2a") return run_fig2a(cfg);
        if (cfg.command == "fig2b") return run_fig2b(cfg);
        if (cfg.command == "fig3a") return run_fig3a(cfg);
        if (cfg.command == "sweep") return run_sweep(cfg);
        if (cfg.command == "validate") return run_validate(cfg);
        std::fprintf(stderr, "unknown command %s\n", cfg.command.c_str());
        return 2;
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const TruncationError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const InvariantError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const FilterEmptyError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const std::out_of_range& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 4;
    }
}
