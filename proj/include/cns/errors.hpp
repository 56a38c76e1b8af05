#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cns {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    /// Short machine-readable tag used in failure records.
    virtual const char* kind() const noexcept { return "Error"; }
};

class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ConfigError"; }
};

class ContractViolation : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ContractViolation"; }
};

class NumericError : public Error {
public:
    NumericError(const std::string& what, std::ptrdiff_t node = -1)
        : Error(what), node_(node) {}
    std::ptrdiff_t node() const noexcept { return node_; }
    const char* kind() const noexcept override { return "NumericError"; }

private:
    std::ptrdiff_t node_;
};

class SmallnessViolation : public Error {
public:
    SmallnessViolation(const std::string& what, std::vector<double> norms, double cap)
        : Error(what), norms_(std::move(norms)), cap_(cap) {}
    const std::vector<double>& norms() const noexcept { return norms_; }
    double cap() const noexcept { return cap_; }
    const char* kind() const noexcept override { return "SmallnessViolation"; }

private:
    std::vector<double> norms_;
    double cap_;
};

class DensityFloor : public Error {
public:
    DensityFloor(const std::string& what, std::size_t node, double value)
        : Error(what), node_(node), value_(value) {}
    std::size_t node() const noexcept { return node_; }
    double value() const noexcept { return value_; }
    const char* kind() const noexcept override { return "DensityFloor"; }

private:
    std::size_t node_;
    double value_;
};

/// Carries the history of the quantity that failed to converge
/// (residuals, contraction ratios or increments, depending on the thrower).
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : Error(what), history_(std::move(history)) {}
    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

class SolverDiverged : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
    const char* kind() const noexcept override { return "SolverDiverged"; }
};

class InnerNoConvergence : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
    const char* kind() const noexcept override { return "InnerNoConvergence"; }
};

class OuterNoConvergence : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
    const char* kind() const noexcept override { return "OuterNoConvergence"; }
};

class ContinuationStalled : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
    const char* kind() const noexcept override { return "ContinuationStalled"; }
};

class BallEscape : public ConvergenceError {
public:
    using ConvergenceError::ConvergenceError;
    const char* kind() const noexcept override { return "BallEscape"; }
};

} // namespace cns
