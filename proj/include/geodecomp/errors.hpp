#pragma once

#include <stdexcept>
#include <string>

namespace geodecomp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// Gram matrix fails the nondegeneracy requirement (exactly singular, or
/// reciprocal condition number below threshold in floating-point mode).
struct SingularGram : Error {
    using Error::Error;
};

struct OddSymplecticDimension : Error {
    using Error::Error;
};

struct NonFiniteValue : Error {
    using Error::Error;
};

struct NonzeroConstantTerm : Error {
    using Error::Error;
};

struct DegreeLimitExceeded : Error {
    using Error::Error;
};

struct QuadratureNonconvergence : Error {
    using Error::Error;
};

struct BlowUp : Error {
    using Error::Error;
};

struct MaxStepsExceeded : Error {
    using Error::Error;
};

/// Malformed system-spec input (bad JSON, bad rational string, inconsistent
/// dimensions).
struct SpecParseError : Error {
    using Error::Error;
};

}  // namespace geodecomp
