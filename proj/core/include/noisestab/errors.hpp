#pragma once

#include <stdexcept>
#include <string>

namespace noisestab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument violates a documented precondition or type invariant.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Operation needs a Boolean alphabet and uniform measure (or similar).
class UnsupportedDomain : public Error {
public:
    using Error::Error;
};

class InvalidKernel : public Error {
public:
    using Error::Error;
};

class InvalidPartition : public Error {
public:
    using Error::Error;
};

/// ρ(P) = 1: the smoothing and invariance machinery does not apply.
class DegenerateDistribution : public Error {
public:
    using Error::Error;
};

/// An exact enumeration or certificate would exceed its work guard.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::string guard, double required, double budget)
        : Error("budget exceeded [" + guard + "]: needs " + std::to_string(required) +
                " operations, budget is " + std::to_string(budget)),
          guard_(std::move(guard)), required_(required), budget_(budget) {}

    const std::string& guard() const noexcept { return guard_; }
    double required() const noexcept { return required_; }
    double budget() const noexcept { return budget_; }

private:
    std::string guard_;
    double required_;
    double budget_;
};

/// Malformed JSON input; `path` names the offending field (e.g. "values[3]").
class ParseError : public Error {
public:
    ParseError(std::string path, const std::string& what)
        : Error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace noisestab
