#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padyn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: non-prime modulus, zero denominator, bad parameter range.
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

/// A documented precondition was violated by the caller (for example a
/// non-squarefree polynomial handed to the p-adic root counter).
class PreconditionViolation : public Error
{
public:
    using Error::Error;
};

/// g and h share a root, or both are zero, or the map is constant.
class DegenerateMap : public Error
{
public:
    using Error::Error;
};

class NotPeriodic : public Error
{
public:
    using Error::Error;
};

class OrbitThroughInfinity : public Error
{
public:
    using Error::Error;
};

class SingularCurve : public Error
{
public:
    using Error::Error;
};

/// A resultant that should define a polynomial came out constant, e.g. when
/// every root is pushed to infinity.
class DegenerateResultant : public Error
{
public:
    using Error::Error;
};

/// Numeric root finder did not reach its residual tolerance.
class ConvergenceError : public Error
{
public:
    ConvergenceError(const std::string &what, double residual)
        : Error(what), residual_(residual)
    {
    }
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A computation would exceed a configured size limit.
class ResourceLimit : public Error
{
public:
    ResourceLimit(const std::string &what, std::uint64_t attempted)
        : Error(what), attempted_(attempted)
    {
    }
    /// The degree (or other size) that was requested when the limit tripped.
    std::uint64_t attempted() const noexcept { return attempted_; }

private:
    std::uint64_t attempted_;
};

} // namespace padyn
