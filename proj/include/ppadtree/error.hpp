#pragma once

#include <stdexcept>
#include <string>

namespace ppad {

// Precondition or well-formedness failure in user-supplied data.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// DSL syntax error; carries a 1-based source position.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& msg, int line, int column)
      : ValidationError("line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// A construction produced something that violates its own contract.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ppad
