#pragma once

#include <stdexcept>
#include <string>

namespace cellboard {

// Base class for every error raised by the library. The CLI maps each
// subclass onto its own exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or non-finite model / grid parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Enumeration or memory bounds exceeded (window too large, table too big).
class BoundError : public Error {
 public:
  using Error::Error;
};

// File system failures. The message always carries the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input files.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace cellboard
