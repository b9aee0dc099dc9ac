#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ceslab/params.hpp"

namespace ceslab::cli {

enum class Format { table, csv, json };
enum class SweepTarget { sigma1, sigma2, both };
enum class SweepMode { raw, normalized };

struct InitialLevels {
  double k0 = 0.0;
  double h0 = 0.0;
  double u0 = 0.0;
  double v0 = 0.0;
};

struct BaselinePoint {
  double k_bar = 0.0;
  double h_bar = 0.0;
  double u_bar = 0.0;
  double v_bar = 0.0;
};

struct SweepSpec {
  SweepTarget target = SweepTarget::sigma1;
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  SweepMode mode = SweepMode::raw;
};

struct TrajectorySpec {
  std::optional<double> z0;
  std::optional<double> z0_factor;  // z0 = factor * z*
  int samples = 0;
  double max_time = 1000.0;
};

struct Scenario {
  std::string name;
  ModelParams params;
  std::optional<InitialLevels> initial;
  std::optional<BaselinePoint> baseline;
  double h_star = 1.0;  // human-capital anchor for level outputs
  std::optional<SweepSpec> sweep;
  TrajectorySpec trajectory;
  std::optional<Format> format;
};

/// Thrown for unreadable files. Carries no path-independent detail.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and validates a scenario document. Field errors are reported as
/// ValidationError with a dotted path ("params.eps"); JSON syntax errors carry
/// the line and column.
Scenario parse_scenario(const std::string& text, const std::string& origin = "<string>");
Scenario load_scenario(const std::string& path);

std::optional<Format> parse_format(const std::string& s);
std::optional<SweepTarget> parse_sweep_target(const std::string& s);

/// "lo:hi:n" into a sweep spec (target and mode untouched).
void apply_grid(SweepSpec& spec, const std::string& grid);

}  // namespace ceslab::cli
