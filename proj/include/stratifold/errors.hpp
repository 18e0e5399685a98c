#pragma once

#include <stdexcept>
#include <string>

namespace stratifold {

enum class ErrorKind {
  Syntax,
  DuplicateName,
  DanglingEdge,
  ZeroLabel,
  BlackDegreeViolation,
  Disconnected,
  UnknownVertex,
  UnknownGenerator,
  UnknownLetter,
  TreeEdgeStable,
  UncertifiedOrders,
  InjectivityViolation,
  InvariantViolation,
  IncompleteTable,
  NotZeroTerminal,
  NotApplicable,
  Undetermined,
  Overflow,
  Unsupported,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; `kind` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int line = 0);

  ErrorKind kind() const { return kind_; }
  // 1-based source line for parse diagnostics, 0 when not applicable.
  int line() const { return line_; }

 private:
  ErrorKind kind_;
  int line_;
};

}  // namespace stratifold
