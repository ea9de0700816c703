#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace parikh {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed grammar file, tree text, or vector text. Carries a 1-based
/// line/column position when the input is line oriented (grammar files);
/// both are 0 for single-line inputs.
class parse_error : public error {
public:
  parse_error(const std::string& what, std::size_t line = 0,
              std::size_t column = 0)
      : error(line > 0 ? "line " + std::to_string(line) + ", col " +
                             std::to_string(column) + ": " + what
                       : what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// An enumeration exceeded its configured cap. Truncated sets would make
/// the computed image unsound, so enumeration aborts loudly instead.
class budget_exceeded : public error {
public:
  budget_exceeded(const std::string& what, std::size_t partial_count)
      : error(what + " (partial count: " + std::to_string(partial_count) +
              ")"),
        partial_count_(partial_count) {}

  std::size_t partial_count() const { return partial_count_; }

private:
  std::size_t partial_count_;
};

}  // namespace parikh
