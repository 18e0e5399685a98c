#include "stratifold/errors.hpp"

namespace stratifold {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::DanglingEdge: return "DanglingEdge";
    case ErrorKind::ZeroLabel: return "ZeroLabel";
    case ErrorKind::BlackDegreeViolation: return "BlackDegreeViolation";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::UnknownLetter: return "UnknownLetter";
    case ErrorKind::TreeEdgeStable: return "TreeEdgeStable";
    case ErrorKind::UncertifiedOrders: return "UncertifiedOrders";
    case ErrorKind::InjectivityViolation: return "InjectivityViolation";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::IncompleteTable: return "IncompleteTable";
    case ErrorKind::NotZeroTerminal: return "NotZeroTerminal";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::Undetermined: return "Undetermined";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::Unsupported: return "Unsupported";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      kind_(kind),
      line_(line) {}

}  // namespace stratifold
