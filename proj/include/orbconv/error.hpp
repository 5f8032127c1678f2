#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace orbconv {

// Categories map one-to-one onto C API status codes and CLI exit codes.
enum class ErrorKind {
  invalid_argument,
  unsupported,
  below_threshold,
  quadrature_budget,
  invariant_violation,
  io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

// Shortest readable form of a double for diagnostics.
inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::invalid_argument, message);
}

}  // namespace orbconv
