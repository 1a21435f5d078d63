#pragma once

#include <stdexcept>
#include <string>

namespace fracdep {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative or adaptive numerical method failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A formula produced an unusable value (underflow, negative variance, ...).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A simulation needed more work than its configured cap allows.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time grid malformed or missing a required point.
class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Not enough usable data for an estimate or a fit.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require_domain(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

}  // namespace detail

}  // namespace fracdep
