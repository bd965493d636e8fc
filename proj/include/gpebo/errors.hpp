#pragma once

#include <stdexcept>
#include <string>

namespace gpebo {

// Base for all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

// Non-finite or out-of-bound signal while integrating. Carries the time at
// which the failure was detected.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double t) : Error(what + " at t=" + std::to_string(t)), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

// Estimator numerical failure (loss of positive definiteness of F).
class EstimatorError : public Error {
public:
    EstimatorError(const std::string& what, double t) : Error(what + " at t=" + std::to_string(t)), t_(t) {}
    double time() const noexcept { return t_; }

private:
    double t_;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

} // namespace gpebo
