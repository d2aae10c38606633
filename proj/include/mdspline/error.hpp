#pragma once

#include <stdexcept>
#include <string>

namespace mdspline {

enum class ErrorKind {
  validation,       // malformed space or document
  unclamped,        // extended partitions that are not clamped
  precondition,     // operator called outside its domain
  out_of_range,     // evaluation point or index outside the admissible range
  unsupported,      // space does not qualify for a special-case algorithm
  singular,         // Hermite system failed to factor
  internal,         // a construction invariant was violated
  io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace mdspline
