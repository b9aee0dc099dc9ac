#include "ceslab/errors.hpp"

#include <sstream>

namespace ceslab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::validation: return "validation";
    case ErrorKind::no_bracket: return "no_bracket";
    case ErrorKind::allocation_out_of_range: return "allocation_out_of_range";
    case ErrorKind::tvc_violation: return "tvc_violation";
    case ErrorKind::singular_state: return "singular_state";
    case ErrorKind::no_convergence: return "no_convergence";
    case ErrorKind::mrs_mismatch: return "mrs_mismatch";
    case ErrorKind::baseline_mismatch: return "baseline_mismatch";
    case ErrorKind::no_real_stable_eigenvector: return "no_real_stable_eigenvector";
    case ErrorKind::target_not_reached: return "target_not_reached";
    case ErrorKind::integration_failure: return "integration_failure";
  }
  return "unknown";
}

namespace {
std::string allocation_message(const std::string& which, double value) {
  std::ostringstream os;
  os.precision(17);
  os << which << " = " << value << " lies outside (0,1)";
  return os.str();
}
}  // namespace

AllocationOutOfRange::AllocationOutOfRange(std::string which, double value)
    : Error(ErrorKind::allocation_out_of_range, allocation_message(which, value)),
      which_(std::move(which)),
      value_(value) {}

}  // namespace ceslab
