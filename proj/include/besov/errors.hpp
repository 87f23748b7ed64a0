#pragma once

#include <stdexcept>
#include <string>

namespace besov {

enum class ErrorKind {
  InvalidInput,
  RangeTruncation,
  Precondition,
  InvalidKernel,
  OutOfResolvableRange,
  Configuration,
  Truncation,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// harness) can report structured errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::RangeTruncation: return "range-truncation";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::InvalidKernel: return "invalid-kernel";
    case ErrorKind::OutOfResolvableRange: return "out-of-resolvable-range";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Truncation: return "truncation";
  }
  return "unknown";
}

}  // namespace besov
