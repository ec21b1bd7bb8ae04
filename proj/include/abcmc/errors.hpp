#pragma once

#include <stdexcept>
#include <string>

namespace abcmc {

/// Invalid model, kernel, proposal or run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A sampler gave up (e.g. the kernel never fires).
class SamplerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Too few values for a statistical estimate.
class InsufficientDataError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Finite chain is reducible, or a linear system built from it is singular.
class ReducibilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation requires a reversible chain.
class NotReversibleError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Tolerance calibration could not meet its budget.
class CalibrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace abcmc
