#pragma once

#include <stdexcept>
#include <string>

namespace ghostlab {

/// Failure categories surfaced by the library. Each operation documents
/// which codes it can raise; the CLI maps codes onto exit statuses.
enum class ErrorCode {
  InvalidArgument,
  CapExceeded,
  MixedKinds,
  NotSymmetric,
  NotAnAction,
  NotTransitive,
  IncompatiblePairing,
  GroupMismatch,
  NotSymmetricSet,
  NotGenerating,
  IdentityInGenset,
  Disconnected,
  ClusterAmbiguous,
  OracleMismatch,
  NotPrime,
  InconsistentArity,
  NotIrreducible,
  PolicyUnsupported,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ghostlab
