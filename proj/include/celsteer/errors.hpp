#ifndef CELSTEER_ERRORS_HPP_
#define CELSTEER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace celsteer {

// Configuration / input schema violations; message names the offending key.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// The drift matrix is not Hurwitz, so no steady state exists. Reported
// distinctly from numerical failures.
struct UnstableSystemError : std::runtime_error {
    explicit UnstableSystemError(const std::string& what) : std::runtime_error(what) {}
};

// A matrix required to be positive semidefinite is not (beyond clip tolerance).
struct NotPositiveSemidefiniteError : std::runtime_error {
    explicit NotPositiveSemidefiniteError(const std::string& what) : std::runtime_error(what) {}
};

// Solver breakdown (non-convergence, residual out of bounds, singular block).
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace celsteer

#endif
