#pragma once

#include <stdexcept>
#include <string>

namespace frugal {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// File or text could not be parsed at all (malformed CSV, bad JSON, bad tree text).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

/// Input parsed but violates a schema or type invariant. Messages name the
/// offending row/column where applicable.
class SchemaError : public Error {
public:
    explicit SchemaError(const std::string& what) : Error(what) {}
};

/// An operation was called outside its stated precondition.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// Iterative calibration failed to reach its target within the iteration bound.
class CalibrationError : public Error {
public:
    explicit CalibrationError(const std::string& what) : Error(what) {}
};

} // namespace frugal
