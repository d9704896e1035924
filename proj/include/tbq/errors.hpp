#pragma once

#include <stdexcept>
#include <string>

namespace tbq {

// Base class for all library errors. Validation failures (bad inputs,
// broken invariants) derive from this; I/O and format problems use
// ParseError so callers can map them to a distinct exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

struct ZeroVector : Error {
    using Error::Error;
};

struct NotUnitary : Error {
    using Error::Error;
};

struct RailOutOfRange : Error {
    using Error::Error;
};

struct BasisNotOrthonormal : Error {
    using Error::Error;
};

struct NonUnitaryComponent : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(const std::string& where, std::size_t line, const std::string& what)
        : Error(where + ":" + std::to_string(line) + ": " + what) {}
    explicit ParseError(const std::string& what) : Error(what) {}
};

} // namespace tbq
