#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jumploci {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `position` is a 0-based character offset into the
/// parsed string (or npos when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position = std::string::npos)
      : Error(position == std::string::npos
                  ? what
                  : what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// An input lies outside what the requested algorithm supports: wrong ring
/// kind, Groebner size limits, enumeration limits.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition was violated (shape mismatch, non-prime p, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace jumploci
