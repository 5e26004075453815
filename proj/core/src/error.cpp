#include "control_forge/error.hpp"

namespace control_forge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_candidate: return "invalid-candidate";
    case ErrorCode::invalid_election: return "invalid-election";
    case ErrorCode::invalid_partition: return "invalid-partition";
    case ErrorCode::unsupported_algorithm: return "unsupported-algorithm";
    case ErrorCode::oracle_inconsistency: return "oracle-inconsistency";
    case ErrorCode::invalid_instance: return "invalid-instance";
    case ErrorCode::invalid_witness: return "invalid-witness";
    case ErrorCode::universe_too_large: return "universe-too-large";
    case ErrorCode::composition_mismatch: return "composition-mismatch";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace control_forge
