#pragma once

#include <stdexcept>
#include <string>

namespace eigenbond {

// Argument outside the domain of a special function or model state space.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Operation not defined for the requested model/subordinator combination.
class UnsupportedModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Malformed interval (x_lo >= x_hi where a proper interval is required).
class IntervalError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A truncated series did not satisfy the stopping rule within the term cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Root bracketing inconsistent with the single-crossing structure.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid user input (schedules, configs, CLI arguments).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace eigenbond
