#pragma once

#include <stdexcept>
#include <string>

namespace mtd {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a probability tensor admits no unique parameter preimage
// (all recovered transition-matrix rows coincide).
struct NonIdentifiableError : Error {
    using Error::Error;
};

// Round-trip residual of an inversion attempt is nonzero.
struct NotInModelError : Error {
    using Error::Error;
};

struct BalanceError : Error {
    using Error::Error;
};

struct DegenerateDenominatorError : Error {
    using Error::Error;
};

struct ZeroMarginalError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

// A computed invariant disagrees with its closed-form value. Must never fire.
struct FormulaMismatchError : Error {
    using Error::Error;
};

// Two independent counting methods disagree. Must never fire.
struct OracleMismatchError : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

}  // namespace mtd
