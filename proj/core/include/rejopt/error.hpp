#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rejopt {

enum class ErrorCode {
  dimension_mismatch,
  not_positive_definite,
  singular_design,
  zero_evidence,
  enumeration_too_large,
  empty_input,
  invalid_argument,
  config_error,
  io_error,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rejopt
