#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfl {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line()` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A gate or register assignment that violates the IR rules.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class CompileError : public Error {
 public:
  using Error::Error;
};

class UnsupportedSize : public Error {
 public:
  using Error::Error;
};

/// Enumeration or simulation bound exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace qfl
