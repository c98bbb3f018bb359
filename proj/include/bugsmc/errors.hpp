#pragma once

#include <stdexcept>
#include <string>

namespace bugsmc {

class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failure with a source location.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error(msg + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Failure while compiling an AST into a model definition.
class BuildError : public Error {
  using Error::Error;
};

// Misuse of a runtime model object (bad shapes, unknown names, bad rows).
class ModelError : public Error {
  using Error::Error;
};

// Numeric failure: invalid distribution parameters on a direct call,
// degenerate chains, non-finite initial states.
class NumericError : public Error {
  using Error::Error;
};

// Bad command-line or run configuration.
class ConfigError : public Error {
  using Error::Error;
};

}  // namespace bugsmc
