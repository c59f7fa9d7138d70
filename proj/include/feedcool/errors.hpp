#pragma once

#include <stdexcept>
#include <string>

namespace feedcool {

// Invalid physical or controller configuration.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Closed loop violates the Routh-Hurwitz condition (or sits in the marginal band).
class InstabilityError : public std::runtime_error {
public:
    InstabilityError(const std::string& what, double margin)
        : std::runtime_error(what), margin_(margin) {}
    double margin() const noexcept { return margin_; }

private:
    double margin_;
};

// det(Delta_n) vanished in the rational integral.
class DegenerateDenominatorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A root of h_n is not strictly in the upper half plane.
class RootConditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Complex arithmetic left a non-negligible imaginary part.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double partial, double error_estimate)
        : std::runtime_error(what), partial_(partial), error_(error_estimate) {}
    double partial_value() const noexcept { return partial_; }
    double error_estimate() const noexcept { return error_; }

private:
    double partial_;
    double error_;
};

}  // namespace feedcool
