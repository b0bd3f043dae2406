#pragma once

#include <stdexcept>
#include <string>

namespace polytract {

enum class ErrorKind {
  malformed_input,
  out_of_orthant,
  independence_violation,
  precondition_violation,
  size_guard,
  inverse_of_zero,
  mixed_tract,
  no_morphism,
  support_mismatch,
  morphism_mismatch,
  tract_mismatch,
  non_idempotent_tract,
  idempotency_principle,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::malformed_input: return "malformed_input";
    case ErrorKind::out_of_orthant: return "out_of_orthant";
    case ErrorKind::independence_violation: return "independence_violation";
    case ErrorKind::precondition_violation: return "precondition_violation";
    case ErrorKind::size_guard: return "size_guard";
    case ErrorKind::inverse_of_zero: return "inverse_of_zero";
    case ErrorKind::mixed_tract: return "mixed_tract";
    case ErrorKind::no_morphism: return "no_morphism";
    case ErrorKind::support_mismatch: return "support_mismatch";
    case ErrorKind::morphism_mismatch: return "morphism_mismatch";
    case ErrorKind::tract_mismatch: return "tract_mismatch";
    case ErrorKind::non_idempotent_tract: return "non_idempotent_tract";
    case ErrorKind::idempotency_principle: return "idempotency_principle";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polytract
