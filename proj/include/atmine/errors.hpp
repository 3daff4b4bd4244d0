#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace atmine {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// One broken structural invariant. `path` addresses the node as a
/// dot-separated list of child indices from the root ("" is the root).
struct Violation {
  std::string path;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : Error(describe(violations)), violations_(std::move(violations)) {}

  [[nodiscard]] const std::vector<Violation>& violations() const { return violations_; }

 private:
  static std::string describe(const std::vector<Violation>& vs) {
    std::string out = "invalid tree";
    for (const auto& v : vs) out += "; node [" + v.path + "]: " + v.message;
    return out;
  }
  std::vector<Violation> violations_;
};

/// Structurally invalid input data (logs, configurations).
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace atmine
