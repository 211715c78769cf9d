#pragma once

#include <stdexcept>
#include <string>

namespace ptqsd {

// Raised when an input lies outside the mathematical domain of an operation
// (out-of-range angles, coincident states, singular alpha, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The evolution-time equation has no real solution for the chosen alpha.
// Carries the offending right-hand side of sin^2(omega tau) = rhs.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, double rhs)
        : std::runtime_error(what), rhs_(rhs) {}

    double rhs() const noexcept { return rhs_; }

private:
    double rhs_;
};

}  // namespace ptqsd
