#pragma once

#include <stdexcept>
#include <string>

namespace gausslink {

/// Raised when a numerical routine cannot produce a meaningful result
/// (singular systems, unstable parameters, non-physical intermediates).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The blue-detuned drift matrix has an eigenvalue with non-negative real part.
class UnstableParametersError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Entanglement of formation is undefined for an ideal EPR (infinitely squeezed) input.
class EprSingularError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Invalid sweep configuration. Carries the offending line (0 if not line-bound).
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace gausslink
