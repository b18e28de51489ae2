#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace feascirc {

// Raised when an operation would exceed a documented size cap (factorial
// state sizes, exhaustive enumeration limits).
class SizeCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sequence failed to produce the requested element; only possible for
// sequences that are not generating.
class NotDecomposableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace feascirc
