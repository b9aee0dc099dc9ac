#pragma once

#include <optional>
#include <string>

#include "report.hpp"
#include "scenario.hpp"

namespace ceslab::cli {

struct SteadyOptions {
  std::optional<double> tol;  // root bracket width, relative
};

struct StabilityOptions {
  std::optional<double> tol;  // zero band for eigenvalue real parts
  /// 16 numbers, row major; skips the model and classifies this matrix.
  std::optional<std::string> debug_matrix;
};

struct SweepOptions {
  std::optional<double> tol;
  std::optional<std::string> grid;  // lo:hi:n
  std::optional<SweepTarget> target;
  int threads = 1;
};

struct TrajectoryOptions {
  std::optional<double> tol;  // integrator relative tolerance
  std::optional<int> samples;
};

Report cmd_steady(const Scenario& s, const SteadyOptions& o);
Report cmd_stability(const Scenario* s, const StabilityOptions& o);
Report cmd_sweep(const Scenario& s, const SweepOptions& o);
Report cmd_compare(const Scenario& first, const Scenario& second);
Report cmd_trajectory(const Scenario& s, const TrajectoryOptions& o);

/// Worker count for sweeps: CES_LAB_THREADS if set (>= 1), otherwise the
/// hardware concurrency.
int sweep_threads();

/// Process exit status for an exception escaping a command: 2 validation,
/// 3 numerical failure, 4 comparison mismatch, 5 I/O.
int exit_code(const std::exception& e);

}  // namespace ceslab::cli
