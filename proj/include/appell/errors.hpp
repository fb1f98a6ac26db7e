#pragma once

#include <stdexcept>
#include <string>

namespace appell {

// Argument outside the domain of the function (|u| >= 1, zero argument,
// a group element outside Gamma_{1,2}, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// kappa(a, .) evaluated with a within the guard distance of a pole a = q^n.
class PoleProximityError : public DomainError {
public:
    using DomainError::DomainError;
};

// A series did not meet its term-size criterion within n_max terms.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace appell
