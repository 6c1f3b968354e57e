#pragma once

#include <stdexcept>
#include <string>

namespace series_mirage {

/// Malformed arguments: non-finite numbers, negative orders, out-of-range indices.
class InvalidInputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Floating-point overflow while evaluating a series or exponential sum.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A method was asked to treat an equation it does not support.
class UnsupportedEquationError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A time stepper produced non-finite values.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, long step)
        : std::runtime_error(what), step_(step) {}

    long step() const noexcept { return step_; }

private:
    long step_;
};

}  // namespace series_mirage
