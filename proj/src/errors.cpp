#include "ghostlab/errors.hpp"

namespace ghostlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:    return "InvalidArgument";
    case ErrorCode::CapExceeded:        return "CapExceeded";
    case ErrorCode::MixedKinds:         return "MixedKinds";
    case ErrorCode::NotSymmetric:       return "NotSymmetric";
    case ErrorCode::NotAnAction:        return "NotAnAction";
    case ErrorCode::NotTransitive:      return "NotTransitive";
    case ErrorCode::IncompatiblePairing:return "IncompatiblePairing";
    case ErrorCode::GroupMismatch:      return "GroupMismatch";
    case ErrorCode::NotSymmetricSet:    return "NotSymmetricSet";
    case ErrorCode::NotGenerating:      return "NotGenerating";
    case ErrorCode::IdentityInGenset:   return "IdentityInGenset";
    case ErrorCode::Disconnected:       return "Disconnected";
    case ErrorCode::ClusterAmbiguous:   return "ClusterAmbiguous";
    case ErrorCode::OracleMismatch:     return "OracleMismatch";
    case ErrorCode::NotPrime:           return "NotPrime";
    case ErrorCode::InconsistentArity:  return "InconsistentArity";
    case ErrorCode::NotIrreducible:     return "NotIrreducible";
    case ErrorCode::PolicyUnsupported:  return "PolicyUnsupported";
  }
  return "UnknownError";
}

}  // namespace ghostlab
