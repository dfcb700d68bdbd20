#pragma once

#include <stdexcept>
#include <string>

namespace modalstab {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration, parameter, or argument values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Argument outside the spatial domain [0, 1].
class DomainError : public Error {
public:
    using Error::Error;
};

/// Adaptive quadrature did not converge to the requested tolerance.
/// Carries the best available estimate and its error bound.
class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : Error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

/// A feedback law was requested for a system with an unstable mode that no
/// input can reach. The witness is the offending mode index.
class NotStateStabilizableError : public Error {
public:
    NotStateStabilizableError(const std::string& what, int witness)
        : Error(what), witness_(witness) {}

    int witness() const noexcept { return witness_; }

private:
    int witness_;
};

/// Too few usable samples to fit a rate.
class EstimationError : public Error {
public:
    using Error::Error;
};

/// Dense linear algebra failed to converge.
class NumericError : public Error {
public:
    using Error::Error;
};

}  // namespace modalstab
