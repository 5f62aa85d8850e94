#ifndef LATSUM_ERRORS_HPP
#define LATSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latsum
{

/// Base class of every domain error raised by the library. Precondition
/// violations on plain arguments (n < 2, m < 1, ...) are reported with
/// std::invalid_argument instead.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidSpec : public Error
{
public:
    using Error::Error;
};

// Reciprocal evaluated where the denominator is below the singular floor.
class SingularPoint : public Error
{
public:
    using Error::Error;
};

// Dilogarithm argument on the branch cut [1, inf).
class CutViolation : public Error
{
public:
    using Error::Error;
};

class DegeneratePoint : public Error
{
public:
    using Error::Error;
};

class LowerHalfPlane : public Error
{
public:
    using Error::Error;
};

class PoleAt : public Error
{
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error
{
public:
    using Error::Error;
};

class ToleranceNotMet : public Error
{
public:
    using Error::Error;
};

class DegenerateGraph : public Error
{
public:
    using Error::Error;
};

class InsufficientSamples : public Error
{
public:
    using Error::Error;
};

} // namespace latsum

#endif
