#pragma once

#include <stdexcept>
#include <string>

namespace rank_arrange {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class NoSolution : public Error {
public:
    using Error::Error;
};

class InsufficientPoints : public Error {
public:
    using Error::Error;
};

/// Interpolation produced a non-integral coefficient; usually a bad prime in the sample.
class NonIntegralCoefficient : public Error {
public:
    using Error::Error;
};

class ConsistencyFailure : public Error {
public:
    using Error::Error;
};

class BadPrime : public Error {
public:
    using Error::Error;
};

class DuplicatePoints : public Error {
public:
    using Error::Error;
};

class NotGeneric : public Error {
public:
    using Error::Error;
};

class InfeasibleRegion : public Error {
public:
    using Error::Error;
};

class TiedDistances : public Error {
public:
    using Error::Error;
};

class TiedMidpoints : public Error {
public:
    using Error::Error;
};

/// Crossing a midpoint swapped two objects that were not adjacent. Internal invariant.
class NonAdjacentSwap : public Error {
public:
    using Error::Error;
};

class DegenerateProjection : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class MissingCharpoly : public Error {
public:
    using Error::Error;
};

class ReferenceDataError : public Error {
public:
    using Error::Error;
};

}  // namespace rank_arrange
