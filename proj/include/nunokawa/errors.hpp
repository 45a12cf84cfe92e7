#pragma once

#include <stdexcept>
#include <string>

namespace nunokawa {

/// Base class for every error this library raises deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the mathematical domain of an operation (|z| >= 1,
/// alpha outside [0,1), malformed construction parameters).
struct DomainError : Error {
    using Error::Error;
};

/// A NaN or infinity reached the boundary of a public operation, either
/// as an input or as a computed result.
struct NonFiniteError : Error {
    using Error::Error;
};

/// |f(z)| fell below the zero tolerance where a quotient needs it nonzero.
struct ZeroValueError : Error {
    using Error::Error;
};

/// The Cayley quotient (1-q)/(1+q) was requested where 1+q vanishes.
struct PoleError : Error {
    using Error::Error;
};

/// The Jack quotient z0 w'(z0)/w(z0) has a non-negligible imaginary part,
/// so z0 is not a maximum-modulus point of w on its circle.
struct NotExtremalError : Error {
    using Error::Error;
};

/// p(z0) - alpha is too small for the contact quotient: Im p(z0) is below
/// the degeneracy threshold, the case the boundary lemma excludes.
struct DegenerateContactError : Error {
    using Error::Error;
};

/// The corpus sampler exhausted its rejection budget.
struct GenerationError : Error {
    using Error::Error;
};

}  // namespace nunokawa
