#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace episodary {

/// Malformed input text. `line()` is 1-based, or 0 when the error has no line
/// (e.g. a single-line episode description, where `column()` is used instead).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Time stamps that decrease in file order.
class OrderError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A configured work or memory guard was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operation applied to a graph that contains a directed cycle.
class CycleError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace episodary
