#include "qiopa/fock.hpp"

#include <cmath>
#include <sstream>

namespace qiopa {

namespace {

double wrap_phase(double phi) {
    double p = std::fmod(phi, 2.0 * kPi);
    if (p < 0.0) p += 2.0 * kPi;
    // Collapse the 2pi boundary so equatorial(2pi) == equatorial(0).
    if (p > 2.0 * kPi - 1e-12) p = 0.0;
    return p;
}

}  // namespace

BasisLabel BasisLabel::equatorial(double phi) {
    return BasisLabel(Kind::Equatorial, wrap_phase(phi));
}

Eigen::Vector2cd BasisLabel::mode1_jones() const {
    if (kind_ == Kind::Poles) return Eigen::Vector2cd(1.0, 0.0);
    const double s = 1.0 / std::sqrt(2.0);
    return Eigen::Vector2cd(s, s * std::polar(1.0, phase_));
}

Eigen::Vector2cd BasisLabel::mode2_jones() const {
    if (kind_ == Kind::Poles) return Eigen::Vector2cd(0.0, 1.0);
    const double s = 1.0 / std::sqrt(2.0);
    return Eigen::Vector2cd(s * std::polar(1.0, -phase_), -s);
}

bool BasisLabel::operator==(const BasisLabel& other) const {
    if (kind_ != other.kind_) return false;
    if (kind_ == Kind::Poles) return true;
    double d = std::fabs(phase_ - other.phase_);
    d = std::min(d, 2.0 * kPi - d);
    return d < 1e-12;
}

std::string BasisLabel::name() const {
    if (kind_ == Kind::Poles) return "HV";
    if (std::fabs(phase_) < 1e-12) return "+-";
    if (std::fabs(phase_ - kPi / 2.0) < 1e-12) return "RL";
    std::ostringstream os;
    os << "equatorial(phi=" << phase_ << ")";
    return os.str();
}

TwoModeSpace::TwoModeSpace(int cutoff, BasisLabel basis) : cutoff_(cutoff), basis_(basis) {
    if (cutoff < 0) throw CutoffError("TwoModeSpace: cutoff must be >= 0");
}

int TwoModeSpace::index(int n, int m) const {
    if (n < 0 || n > cutoff_ || m < 0 || m > cutoff_) {
        std::ostringstream os;
        os << "occupation (" << n << ", " << m << ") outside cutoff " << cutoff_;
        throw CutoffError(os.str());
    }
    return n * (cutoff_ + 1) + m;
}

std::pair<int, int> TwoModeSpace::occupation(int index) const {
    return {index / (cutoff_ + 1), index % (cutoff_ + 1)};
}

void require_same_space(const TwoModeSpace& a, const TwoModeSpace& b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": incompatible spaces (cutoff " << a.cutoff() << " basis " << a.basis().name()
           << " vs cutoff " << b.cutoff() << " basis " << b.basis().name() << ")";
        throw SpaceMismatchError(os.str());
    }
}

PureState::PureState(TwoModeSpace s, Vector amps) : space(s), amplitudes(std::move(amps)) {
    if (amplitudes.size() != space.dimension()) {
        throw SpaceMismatchError("PureState: amplitude vector length does not match space dimension");
    }
}

PureState PureState::normalized() const {
    double n = norm();
    if (n < 1e-300) throw NormalizationError("PureState: cannot normalize a zero vector");
    return PureState(space, amplitudes / n);
}

double PureState::mean_total_photons() const {
    const int c = space.cutoff();
    double num = 0.0, den = 0.0;
    for (int n = 0; n <= c; ++n) {
        for (int m = 0; m <= c; ++m) {
            double w = std::norm(amplitudes[n * (c + 1) + m]);
            num += w * (n + m);
            den += w;
        }
    }
    if (den <= 0.0) throw NormalizationError("PureState: zero vector has no mean photon number");
    return num / den;
}

int PureState::max_occupied_layer(double eps) const {
    const int c = space.cutoff();
    int top = 0;
    for (int n = 0; n <= c; ++n)
        for (int m = 0; m <= c; ++m)
            if (std::abs(amplitudes[n * (c + 1) + m]) > eps) top = std::max(top, n + m);
    return top;
}

PureState number_state(const TwoModeSpace& space, int n, int m) {
    Vector amps = Vector::Zero(space.dimension());
    amps[space.index(n, m)] = 1.0;
    return PureState(space, std::move(amps));
}

Complex inner_product(const PureState& a, const PureState& b) {
    require_same_space(a.space, b.space, "inner_product");
    return a.amplitudes.dot(b.amplitudes);  // Eigen's dot conjugates the left argument
}

}  // namespace qiopa
