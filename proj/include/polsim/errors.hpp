#pragma once

#include <stdexcept>
#include <string>

namespace polsim {

// Error taxonomy shared by all modules. The CLI maps each type to a distinct
// exit code (see cli.hpp).

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument values (non-positive mass, k out of range, ...).
struct param_error : error {
    using error::error;
};

// Input fails a structural precondition (non-symmetric matrix, zero spectrum).
struct validation_error : error {
    using error::error;
};

// A scan window or box is too small (minimum at edge, wavefunction tails).
struct window_error : error {
    using error::error;
};

// Basis/cutoff/optimizer convergence failure.
struct convergence_error : error {
    using error::error;
};

// Eigenvector field lost state identity between adjacent scan points.
struct gauge_error : error {
    using error::error;
};

// A result is not uniquely defined (e.g. several equal spectral maxima).
struct ambiguity_error : error {
    using error::error;
};

// File and format problems.
struct io_error : error {
    using error::error;
};

} // namespace polsim
