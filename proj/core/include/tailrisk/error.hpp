#pragma once

#include <stdexcept>
#include <string>

namespace tailrisk {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The input sample or arguments violate an estimator precondition
// (too short, out-of-range level, empty tail, nonpositive threshold, ...).
class DataError : public Error {
public:
    using Error::Error;
};

// A numerical procedure failed or produced an undefined quantity.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Iterative solver stopped without meeting its tolerance.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& what, double last_iterate, double residual)
        : NumericalError(what), last_iterate_(last_iterate), residual_(residual) {}

    double last_iterate() const noexcept { return last_iterate_; }
    double residual() const noexcept { return residual_; }

private:
    double last_iterate_;
    double residual_;
};

}  // namespace tailrisk
