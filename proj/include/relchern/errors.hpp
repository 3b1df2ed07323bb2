#pragma once

#include <stdexcept>
#include <string>

namespace relchern {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live in different rings (different truncation bound or symbol table).
class ContextError : public Error {
public:
    using Error::Error;
};

/// A symbol is unknown to a ring, or has the wrong kind for the operation.
class SymbolError : public Error {
public:
    using Error::Error;
};

/// Formal inversion of a class whose constant term is not 1.
class NonUnitError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

/// Malformed domain data (bundle roots that are not linear, negative multiplicities, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The degree-d discriminant formulas need d >= 2.
class UnsupportedDegreeError : public Error {
public:
    using Error::Error;
};

/// A class contains symbols that a projective-space base cannot interpret.
class SpecializationError : public Error {
public:
    using Error::Error;
};

/// Integration requested on a base without a degree map.
class ModeError : public Error {
public:
    using Error::Error;
};

/// An internal identity failed (e.g. a divided difference left a remainder).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Syntax error in a class expression, with 1-based position.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(message + " at line " + std::to_string(line) + ", column " + std::to_string(column)),
          message_(message),
          line_(line),
          column_(column) {}

    const std::string& message() const noexcept { return message_; }
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    std::string message_;
    int line_;
    int column_;
};

} // namespace relchern
