#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fedlab {

/// Base class of all engine errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Division by the zero polynomial / rational function.
struct DivisionByZero : Error {
    using Error::Error;
};

/// Evaluation of a rational function at a zero of its denominator.
struct PoleError : Error {
    using Error::Error;
};

/// An input violates a named structural invariant (e.g. "omega not closed").
struct ValidationError : Error {
    std::string invariant;
    ValidationError(std::string inv, const std::string& msg)
        : Error(msg), invariant(std::move(inv)) {}
};

/// Operands live on different charts or carry different truncation orders.
struct MismatchError : Error {
    using Error::Error;
};

/// Capacity limits of the packed representations (exponents, dimension).
struct LimitError : Error {
    using Error::Error;
};

/// Internal consistency failure; indicates an engine bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

} // namespace fedlab
