#pragma once

#include <stdexcept>
#include <string>

namespace thinsys {

/// Base class for every recoverable error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field construction, mismatched operands, division by zero.
class FieldError : public Error {
public:
    using Error::Error;
};

/// Malformed textual input. `line()` is 0 when no line applies.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Raised when a certificate fails its own re-verification, or when a
/// situation that the underlying theorems rule out is observed. Never
/// expected in practice; callers should let it propagate.
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace thinsys
