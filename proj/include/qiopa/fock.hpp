#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "qiopa/errors.hpp"

namespace qiopa {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

constexpr double kPi = 3.14159265358979323846;

// Which polarization pair the two Fock modes represent. Either the poles
// {H, V} of the Poincare sphere or an equatorial pair {phi, phi_perp}.
//
// Jones vectors (components in the H/V basis):
//   poles:      mode1 = (1, 0),              mode2 = (0, 1)
//   equatorial: mode1 = (1, e^{i phi})/sqrt2, mode2 = (e^{-i phi}, -1)/sqrt2
//
// The phase of the perpendicular vector is fixed so that the two-mode
// squeezing interaction takes the same form in every equatorial basis;
// {+,-} is phi = 0 and {R,L} is phi = pi/2.
class BasisLabel {
  public:
    enum class Kind { Poles, Equatorial };

    static BasisLabel poles() { return BasisLabel(Kind::Poles, 0.0); }
    static BasisLabel equatorial(double phi);
    static BasisLabel plus_minus() { return equatorial(0.0); }
    static BasisLabel circular() { return equatorial(kPi / 2.0); }

    Kind kind() const { return kind_; }
    double phase() const { return phase_; }

    Eigen::Vector2cd mode1_jones() const;
    Eigen::Vector2cd mode2_jones() const;

    bool operator==(const BasisLabel& other) const;
    bool operator!=(const BasisLabel& other) const { return !(*this == other); }

    std::string name() const;

  private:
    BasisLabel(Kind kind, double phase) : kind_(kind), phase_(phase) {}

    Kind kind_;
    double phase_;  // radians in [0, 2pi); 0 for poles
};

// Truncated two-mode bosonic Fock space. Basis states |n, m> with
// 0 <= n, m <= cutoff are enumerated row-major, n outer:
// index(n, m) = n * (cutoff + 1) + m.
class TwoModeSpace {
  public:
    TwoModeSpace(int cutoff, BasisLabel basis);

    int cutoff() const { return cutoff_; }
    const BasisLabel& basis() const { return basis_; }
    int dimension() const { return (cutoff_ + 1) * (cutoff_ + 1); }

    int index(int n, int m) const;
    std::pair<int, int> occupation(int index) const;

    bool operator==(const TwoModeSpace& other) const {
        return cutoff_ == other.cutoff_ && basis_ == other.basis_;
    }
    bool operator!=(const TwoModeSpace& other) const { return !(*this == other); }

  private:
    int cutoff_;
    BasisLabel basis_;
};

void require_same_space(const TwoModeSpace& a, const TwoModeSpace& b, const char* what);

// Complex amplitude vector over the two-mode number basis.
struct PureState {
    TwoModeSpace space;
    Vector amplitudes;

    PureState(TwoModeSpace s, Vector amps);

    double norm() const { return amplitudes.norm(); }
    PureState normalized() const;

    // Tr over |psi|^2 of n1 + n2, normalizing by the squared norm.
    double mean_total_photons() const;

    // Largest total photon number n + m carrying amplitude above `eps`.
    int max_occupied_layer(double eps = 0.0) const;
};

// |n, m>: unit amplitude on the single basis state.
PureState number_state(const TwoModeSpace& space, int n, int m);

// Standard Hermitian inner product <a|b>.
Complex inner_product(const PureState& a, const PureState& b);

}  // namespace qiopa
