#pragma once

#include <stdexcept>
#include <string>

namespace lidqsd {

// Argument outside its documented domain (bad probability, angle, basis...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A closed form hit a zero denominator (e.g. λ1 = 0 with |γ| = 0).
class DegenerateError : public DomainError {
public:
    using DomainError::DomainError;
};

// Inputs are individually valid but mutually inconsistent
// (states that do not decompose ρ, negative radicands, ...).
class InconsistentInputs : public DomainError {
public:
    using DomainError::DomainError;
};

// tan x · tan(α − x) · sin²φ′ outside [0, 1].
class InfeasibleGeometry : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace lidqsd
