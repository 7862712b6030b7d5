#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace emogi {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A vertex id or count does not fit the configured element width.
class DatatypeError : public Error {
 public:
  using Error::Error;
};

/// Binary file is truncated or carries a bad magic/version.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// A CSR structural invariant is violated.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Bad arguments to a generator, traversal or model.
class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace emogi
