#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cattaneo {

/// Bad argument to a public operation (non-positive length, empty set, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A parameter hits the exceptional set: c ∈ ℰ, σ ∈ 𝒵, or sin(L/√c) = 0.
class ExceptionalParameter : public std::domain_error {
public:
    ExceptionalParameter(const std::string& what, double value, double nearest)
        : std::domain_error(what), value_(value), nearest_(nearest) {}

    double value() const noexcept { return value_; }
    double nearest() const noexcept { return nearest_; }

private:
    double value_;
    double nearest_;
};

/// Leading coefficient of a mode equation vanishes; the first-order branch
/// of solve_mode must be used instead.
class DegenerateMode : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Singular Fourier parameter in the whole-line mode formula.
class SingularParameter : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Experiment configuration cannot be satisfied (e.g. c_k collides with ℰ).
class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive integrator step underflow.
class StiffnessError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Finite-difference system is singular: c matches a discrete eigenvalue.
class DiscreteExceptional : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace cattaneo
