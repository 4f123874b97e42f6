#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lamlab {

// Bad input: unparsable term/spec text, unknown names, invalid encodings.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public DomainError {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : DomainError("syntax error at " + std::to_string(line) + ":" +
                      std::to_string(column) + ": " + msg),
          message_(msg), line_(line), column_(column) {}

    const std::string& message() const { return message_; }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::string message_;
    std::size_t line_;
    std::size_t column_;
};

// Evaluation hit a structural problem (e.g. readback met a redex at the top).
class EvalError : public DomainError {
public:
    using DomainError::DomainError;
};

// Recursion depth or term size limit exceeded.  Distinct from fuel exhaustion,
// which is an ordinary outcome.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lamlab
