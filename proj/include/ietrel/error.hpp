#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ietrel {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two scalars (or documents) from different quadratic fields met in one
// computation.
class ContextMismatch : public Error {
public:
    using Error::Error;
};

// An argument outside the operation's domain: a point outside [0,1), lengths
// not on the simplex, a spec with out-of-range rates, and so on.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line),
          column_(column)
    {
    }

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// A bounded search (power M, radius halvings, rejection sampling) hit its cap.
class SearchCapExceeded : public Error {
public:
    using Error::Error;
};

class VerificationFailure : public Error {
public:
    using Error::Error;
};

// Raised when a checked mathematical invariant fails; indicates a bug.
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace ietrel
