#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vintage {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid or inconsistent run configuration. Collects every issue found in
// one validation pass so the user sees the full list at once.
class ConfigError : public Error {
public:
    explicit ConfigError(std::vector<std::string> issues)
        : Error(join(issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(const std::vector<std::string>& issues);
    std::vector<std::string> issues_;
};

// A mathematically well-posed quantity was evaluated outside its domain
// (age off the grid, negative output under a power revenue, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed runtime input: bad table file, profile with the wrong node
// count, non-finite control values.
class InputError : public Error {
public:
    using Error::Error;
};

// Base for iterative-solver failures.
class SolverError : public Error {
public:
    using Error::Error;
};

// The scalar equation is positive at zero: no nonnegative root exists.
class NoNonnegativeRootError : public SolverError {
public:
    using SolverError::SolverError;
};

// A sign-changing bracket could not be established.
class BracketError : public SolverError {
public:
    using SolverError::SolverError;
};

// An iteration ran out of budget before reaching tolerance.
class NonConvergenceError : public SolverError {
public:
    NonConvergenceError(const std::string& what, int iterations, double last_step,
                        double last_ratio)
        : SolverError(what), iterations(iterations), last_step(last_step),
          last_ratio(last_ratio) {}

    int iterations;
    double last_step;
    double last_ratio;
};

// A function handed to a solver produced NaN.
class EvaluationError : public Error {
public:
    using Error::Error;
};

// A hard check of the verification battery failed.
class VerificationFailure : public Error {
public:
    using Error::Error;
};

} // namespace vintage
