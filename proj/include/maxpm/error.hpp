#pragma once

#include <stdexcept>
#include <string>

namespace maxpm {

// Error categories carried alongside the message so callers (and the CLI exit
// path) can react to the kind of failure without parsing strings.
enum class ErrorCode {
  overlapping_groups,
  budget_out_of_range,
  empty_group,
  unknown_element,
  infeasible_input,
  element_already_in_set,
  negative_weight,
  empty_candidate_pool,
  invalid_delta,
  instance_too_large,
  gamma_zero,
  malformed_line,
  non_finite_feature,
  not_symmetric,
  factorization_failure,
  budget_exceeds_segment,
  config_error,
  io_error,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::overlapping_groups: return "overlapping_groups";
    case ErrorCode::budget_out_of_range: return "budget_out_of_range";
    case ErrorCode::empty_group: return "empty_group";
    case ErrorCode::unknown_element: return "unknown_element";
    case ErrorCode::infeasible_input: return "infeasible_input";
    case ErrorCode::element_already_in_set: return "element_already_in_set";
    case ErrorCode::negative_weight: return "negative_weight";
    case ErrorCode::empty_candidate_pool: return "empty_candidate_pool";
    case ErrorCode::invalid_delta: return "invalid_delta";
    case ErrorCode::instance_too_large: return "instance_too_large";
    case ErrorCode::gamma_zero: return "gamma_zero";
    case ErrorCode::malformed_line: return "malformed_line";
    case ErrorCode::non_finite_feature: return "non_finite_feature";
    case ErrorCode::not_symmetric: return "not_symmetric";
    case ErrorCode::factorization_failure: return "factorization_failure";
    case ErrorCode::budget_exceeds_segment: return "budget_exceeds_segment";
    case ErrorCode::config_error: return "config_error";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace maxpm
