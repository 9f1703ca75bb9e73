#pragma once

#include <stdexcept>
#include <string>

namespace qiopa {

// Distinct exception types so callers can tell configuration mistakes from
// numerical trouble.

// Photon index outside the per-mode cutoff.
struct CutoffError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// Two states/operators that live in different spaces (cutoff or basis label).
struct SpaceMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A vector that was required to be normalized is not.
struct NormalizationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The requested cutoff cannot hold the state within the tail tolerance.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numerical invariant (hermiticity, positivity, unitarity, ...) failed
// beyond its tolerance.
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Post-selection removed (numerically) all of the state.
struct FilterEmptyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qiopa
