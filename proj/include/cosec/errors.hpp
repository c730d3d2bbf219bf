#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cosec {

// Base class for every recoverable failure raised by the library. The CLI
// maps subclasses onto its exit codes (validation 2, refusal 3, transport 4).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad inputs, violated preconditions, malformed files.
class ValidationError : public Error {
public:
    using Error::Error;
};

class FieldMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DivisionByZeroError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DimensionMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Linear system has no solution (right-hand side outside the column space).
class NoSolutionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// A brute-force routine was asked to exceed its enumeration cap.
class CapExceededError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotACodewordError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class RankDeficientError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Text format error with 1-based position information.
class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : ValidationError(what + " (line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ")"),
          line(line),
          column(column) {}

    std::size_t line;
    std::size_t column;
};

// The protocol refused to run (e.g. the code is not certified minimal).
class SecurityRefusalError : public Error {
public:
    using Error::Error;
};

// Socket / framing failures.
class TransportError : public Error {
public:
    using Error::Error;
};

// The peer aborted the session or a session entered its failure state.
class ProtocolAbortError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

}  // namespace cosec
