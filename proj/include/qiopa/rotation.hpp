#pragma once

#include "qiopa/fock.hpp"

namespace qiopa {

// 2x2 special/unitary polarization transformation. Construction checks
// u^dagger u = I to 1e-12.
struct ModeUnitary {
    Eigen::Matrix2cd u;

    explicit ModeUnitary(Eigen::Matrix2cd m);

    bool is_monomial(double eps = 1e-14) const;  // exactly one nonzero per row/column
};

// Basis-change unitary: creation operators transform as
//   a_i^dag(from) = sum_j u_ji a_j^dag(to),  u_ji = <to_j | from_i>.
ModeUnitary basis_change(const BasisLabel& from, const BasisLabel& to);

// Lift of a mode unitary to the truncated Fock space, acting as
// a_i^dag -> sum_j u_ji a_j^dag layer by layer (block-diagonal in n + m).
//
// Layers with n + m <= cutoff are complete in the truncated space and carry
// the exact symmetric-power blocks. Layers above the cutoff are incomplete;
// there the lift acts exactly when u is a mode permutation/phase (the action
// stays inside the window) and as the identity otherwise, which keeps the
// returned matrix exactly unitary. States must have negligible weight above
// the cutoff layer for a non-monomial rotation to be faithful.
Matrix lift_mode_unitary(const TwoModeSpace& space, const ModeUnitary& u);

// Applies the lifted unitary to a state without materializing the full
// matrix; the result is relabeled with `target`.
PureState apply_mode_unitary(const PureState& psi, const ModeUnitary& u, const BasisLabel& target);

// Re-expresses a state in another basis of the same cutoff.
PureState expressed_in(const PureState& psi, const BasisLabel& target);

}  // namespace qiopa
