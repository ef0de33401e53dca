#pragma once

#include <stdexcept>
#include <string>

namespace gks {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument violated an operation's precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A guard against computations too large for interactive use.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// Malformed file content; carries the 1-based line number when known.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// A strategy or board broke the game protocol.
class ProtocolViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace gks
