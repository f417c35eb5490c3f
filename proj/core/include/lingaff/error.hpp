#pragma once

#include <stdexcept>
#include <string>

namespace lingaff {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input file; the message names the file and line number.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Data that parses but violates a declared constraint (feature kinds,
/// label completeness, inventory membership).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Two rows assign contradictory values to the same key.
class ConflictError : public Error {
public:
    using Error::Error;
};

/// A caller-supplied argument is out of range or inconsistent.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Matrix or vector shapes do not line up.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A query carries no usable evidence (zero attested concepts).
class UnclassifiableError : public Error {
public:
    using Error::Error;
};

}  // namespace lingaff
