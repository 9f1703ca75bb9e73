#pragma once

#include <utility>

#include "qiopa/density.hpp"
#include "qiopa/fock.hpp"

namespace qiopa {

// Threshold of the orthogonality filter: accept |n - m| > k.
struct OFThreshold {
    int k;

    explicit OFThreshold(int threshold);
};

// Diagonal of the projector selecting basis states with |n - m| > k
// (entries 0 or 1, indexed like the basis).
Eigen::VectorXd of_projector(const TwoModeSpace& space, const OFThreshold& threshold);

// Post-selected state Pi rho Pi / p and the success probability
// p = Tr(Pi rho). Throws FilterEmptyError when p < 1e-12.
std::pair<DensityOperator, double> apply_filter(const DensityOperator& rho,
                                                const OFThreshold& threshold);

}  // namespace qiopa
