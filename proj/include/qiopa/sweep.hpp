#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qiopa/loss.hpp"
#include "qiopa/states.hpp"

namespace qiopa {

enum class Family { EquatorialMqs, PolePair, CoherentPointer, CoherentMqs, FilteredEquatorial };

std::string family_name(Family family);

struct SweepSample {
    double x;  // mean lost photons, x = R * n0
    double R;
    double value;  // Bures distance
    std::optional<double> success_prob;
};

// One curve of distance versus mean lost photons, with enough metadata to
// regenerate it exactly.
struct SweepCurve {
    Family family;
    double param;  // g for the macro families, |alpha|^2 for the coherent ones
    std::optional<int> of_k;
    int cutoff;
    double tail_tol;
    double n0;
    std::vector<SweepSample> samples;
};

struct SweepOptions {
    std::optional<int> cutoff_override;
    double tail_tol = kDefaultTailTol;
    int threads = 1;
};

// 60 uniform samples on [0, min(4, n0)], plus (when n0 > 4) 20 log-spaced
// samples closing in on the endpoint x = n0. Resolves both the slow initial
// decay and the steep terminal drop.
std::vector<double> default_x_grid(double n0);

// Cutoff rule and x-axis normalization per family. n0 is the two-mode mean
// photon number of the zero-loss macro-state; for the coherent families it
// is |alpha|^2, the scale in x = R |alpha|^2.
int family_cutoff(Family family, double param, double tail_tol = kDefaultTailTol);
double family_n0(Family family, double param, int cutoff, double tail_tol = kDefaultTailTol);

// ---- point evaluators ----------------------------------------------------
// Bures distance between the two lossy states of each family at a given
// reflectivity. Each evaluator exploits the family's structure (tensor
// factorization over modes, photon-number-difference blocks, Kraus-column
// Gram factors); all are cross-checked against the dense route in the tests.

double equatorial_pair_distance(const GainParams& gain, double R, int cutoff,
                                double phi = 0.0);
double pole_pair_distance(const GainParams& gain, double R, int cutoff);

// Distance between the two macro-qubit superpositions (Phi+ +/- i Phi-)/sqrt2,
// evaluated in the fixed {phi, phi_perp} basis with no covariance shortcut.
double mqs_pair_distance(const GainParams& gain, double R, int cutoff);

double coherent_pointer_pair_distance(double alpha_sq, double R, int cutoff);
double coherent_mqs_pair_distance(double alpha_sq, double R, int cutoff);

struct FilteredPoint {
    double distance;
    double success_prob_a;
    double success_prob_b;
};

// Loss first, then the |n-m| > k filter on both macro-qubits, each
// renormalized, then the distance.
FilteredPoint filtered_pair_point(const GainParams& gain, double R, int of_k, int cutoff);

// ---- curve drivers ---------------------------------------------------------

SweepCurve sweep_distance(Family family, double param, const std::vector<double>& x_grid,
                          const SweepOptions& opts = {});

SweepCurve filtered_sweep(const GainParams& gain, int of_k, const std::vector<double>& x_grid,
                          const SweepOptions& opts = {});

// Closed-form reference curves on the same grid convention.
SweepCurve coherent_pointer_closed_curve(double alpha_sq, const std::vector<double>& x_grid);
SweepCurve coherent_mqs_closed_curve(double alpha_sq, const std::vector<double>& x_grid);

}  // namespace qiopa
