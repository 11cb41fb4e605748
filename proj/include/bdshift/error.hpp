#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bdshift {

enum class ErrorKind {
  InvalidArgument,
  PeriodNotDivisor,
  NotFinite,
  UnboundedCoefficient,
  RegimeMismatch,
  NonzeroMean,
  NotDerivation,
  WindowTooSmall,
  NoConvergence,
  LevelMismatch,
  SideMismatch,
  SyntaxError,
  UnknownName,
  InternalInvariant,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind; the CLI maps kinds to exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace bdshift
