#pragma once

#include <stdexcept>
#include <string>

namespace catlab {

// Invalid argument for an operation (outside its stated domain).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// A series/iteration failed to reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// A root bracket could not be established where one was required.
class BracketingError : public std::runtime_error {
public:
    explicit BracketingError(const std::string& what) : std::runtime_error(what) {}
};

// An exact integer result exceeded the representable range.
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// A computed quantity violated a structural invariant (numerical pathology).
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace catlab
