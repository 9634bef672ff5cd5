#pragma once

#include <stdexcept>
#include <string>

namespace eigenforge {

enum class ErrorKind {
  kInvalidInput,
  kIntervalMismatch,
  kDomain,
  kDegenerate,
  kConstraint,
  kConditioning,
  kPrecondition,
  kAccuracy,
  kNonConvergence,
  kNoLattice,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library. The kind drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace eigenforge
