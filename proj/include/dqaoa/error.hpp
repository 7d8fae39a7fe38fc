#pragma once

#include <stdexcept>
#include <string>

namespace dqaoa {

/// Malformed or inconsistent caller input (bad assignment size, invalid config, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Syntax error in a problem or graph file. Carries a 1-based line/column.
class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& message)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// A constraint that no Boolean assignment can satisfy.
class InfeasibleError : public InputError {
 public:
  using InputError::InputError;
};

/// Reconstructed auxiliary variable disagrees with the product it stands for.
class ReconstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dqaoa
