#pragma once

#include <stdexcept>
#include <string>

namespace asyncbool {

// Bad arguments: width mismatch, index out of range, violated precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The request is well formed but exceeds what the exhaustive procedures
// support (e.g. Omega enumeration beyond n = 3).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace asyncbool
