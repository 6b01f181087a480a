#pragma once

#include <stdexcept>
#include <string>

namespace mnash {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (base-point mismatch, wrong layout).
class ContractViolation : public Error {
public:
    using Error::Error;
};

/// Input outside the mathematical domain (non-PD matrix, x2 <= 0, violated constant guard).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed or degenerate user input.
class InputError : public Error {
public:
    using Error::Error;
};

/// Configuration file could not be parsed or validated.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An iterative routine failed to converge or produced non-finite values.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double residual)
        : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
    explicit NumericError(const std::string& what) : Error(what), residual_(0.0) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Rejection sampling gave up.
class SamplingError : public Error {
public:
    SamplingError(const std::string& what, double acceptance_rate)
        : Error(what + " (acceptance rate " + std::to_string(acceptance_rate) + ")"),
          acceptance_rate_(acceptance_rate) {}

    double acceptance_rate() const noexcept { return acceptance_rate_; }

private:
    double acceptance_rate_;
};

}  // namespace mnash
