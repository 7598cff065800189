#pragma once

#include <stdexcept>
#include <string>

namespace krein {

// Base type for all library failures. Every throwing path uses a named
// subclass so callers can discriminate without string matching.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    using Error::Error;
};
struct NonHermitian : Error {
    using Error::Error;
};
struct RankAmbiguous : Error {
    using Error::Error;
};
struct SingularMatrix : Error {
    using Error::Error;
};
struct DomainViolation : Error {
    using Error::Error;
};
struct PoleAtAlpha : Error {
    using Error::Error;
};
struct UnsupportedFunction : Error {
    using Error::Error;
};
struct NonHermitianKernel : Error {
    using Error::Error;
};
struct SingularResolvent : Error {
    using Error::Error;
};
struct InequalityViolated : Error {
    using Error::Error;
};
struct ZeroDenominator : Error {
    using Error::Error;
};
struct NonInvertibleSigma : Error {
    using Error::Error;
};
struct CenterMismatch : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct NotInImage : Error {
    using Error::Error;
};
struct SingularSResolvent : Error {
    using Error::Error;
};
struct SingularDenominator : Error {
    using Error::Error;
};
struct NonIntrinsicPair : Error {
    using Error::Error;
};
struct ParseError : Error {
    using Error::Error;
};

}  // namespace krein
