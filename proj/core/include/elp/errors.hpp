#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elp {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (empty world view, mixed
/// popcounts in a guess group, ELP handed to an ASP-only routine, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

/// A guess integer does not fit the Ep enumeration it is decoded against.
class RangeError : public Error {
public:
    using Error::Error;
};

/// A configured size limit was exceeded (engine atom cap, oracle cap,
/// machine word width for guess encoding).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Raised by the aggregation step when a solver returns an answer set whose
/// k-/m-atoms do not decode to a submitted guess.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace elp
