#include "qiopa/ofilter.hpp"

#include <cmath>
#include <sstream>

namespace qiopa {

OFThreshold::OFThreshold(int threshold) : k(threshold) {
    if (threshold < 0) throw InvariantError("OFThreshold: k must be >= 0");
}

Eigen::VectorXd of_projector(const TwoModeSpace& space, const OFThreshold& threshold) {
    const int c = space.cutoff();
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(space.dimension());
    for (int n = 0; n <= c; ++n)
        for (int m = 0; m <= c; ++m)
            if (std::abs(n - m) > threshold.k) diag[space.index(n, m)] = 1.0;
    return diag;
}

std::pair<DensityOperator, double> apply_filter(const DensityOperator& rho,
                                                const OFThreshold& threshold) {
    Eigen::VectorXd diag = of_projector(rho.space, threshold);
    double p = 0.0;
    for (int i = 0; i < diag.size(); ++i)
        if (diag[i] != 0.0) p += rho.matrix(i, i).real();
    if (p < 1e-12) {
        std::ostringstream os;
        os << "apply_filter: success probability " << p << " below 1e-12 at k = " << threshold.k;
        throw FilterEmptyError(os.str());
    }
    Matrix filtered = diag.asDiagonal() * rho.matrix * diag.asDiagonal();
    filtered /= p;
    return {DensityOperator(rho.space, std::move(filtered)), p};
}

}  // namespace qiopa
