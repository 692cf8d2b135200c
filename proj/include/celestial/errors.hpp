#pragma once

#include <stdexcept>
#include <string>

namespace celestial {

/// Input rejected before any computation: bad arguments, energies below a
/// critical value, collision states.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public InputError {
public:
    using InputError::InputError;
};

class ArgumentError : public InputError {
public:
    using InputError::InputError;
};

/// A rotation number sits on an integer, so the index jumps there.
class DegeneracyError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A numerical method did not reach its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CollisionError : public NumericalError {
public:
    CollisionError(const std::string& what, double t) : NumericalError(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace celestial
