#pragma once

#include <stdexcept>
#include <string>

namespace control_forge {

enum class ErrorCode {
  invalid_candidate,
  invalid_election,
  invalid_partition,
  unsupported_algorithm,
  oracle_inconsistency,
  invalid_instance,
  invalid_witness,
  universe_too_large,
  composition_mismatch,
  parse_error,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace control_forge
