#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ceslab {

/// Failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  validation,          // a parameter or state violates its invariants
  no_bracket,          // gap never changes sign within the expansion budget
  allocation_out_of_range,
  tvc_violation,
  singular_state,      // u == v or R == 0
  no_convergence,
  mrs_mismatch,
  baseline_mismatch,
  no_real_stable_eigenvector,
  target_not_reached,
  integration_failure,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Carries the name of the offending field so callers can report it.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(ErrorKind::validation, what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// u* or v* outside (0,1). The computed value is kept for reporting.
class AllocationOutOfRange : public Error {
 public:
  AllocationOutOfRange(std::string which, double value);
  const std::string& which() const noexcept { return which_; }
  double value() const noexcept { return value_; }

 private:
  std::string which_;
  double value_;
};

}  // namespace ceslab
