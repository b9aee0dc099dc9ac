#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "ceslab/eigen4.hpp"
#include "ceslab/params.hpp"

namespace ceslab {

enum class StopReason {
  completed,            // reached t_end
  target_reached,       // event function changed sign
  singularity_reached,  // |u - v| fell below 1e-9
  left_domain,          // u or v outside (1e-9, 1 - 1e-9), or z, q <= 0
  step_size_underflow,
  step_budget_exhausted,
};

std::string_view to_string(StopReason r);

struct TrajectoryMeta {
  int steps = 0;
  int rejected = 0;
  /// Largest scaled local error estimate among accepted steps (<= 1).
  double max_residual = 0.0;
  StopReason stop = StopReason::completed;
};

/// Sampled path of the reduced system, in forward-time order. The last
/// sample is the last good state whatever the stop reason.
struct Trajectory {
  std::vector<double> times;
  std::vector<ReducedState> states;
  std::vector<LevelState> levels;  // empty until reconstruct_levels
  TrajectoryMeta meta;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  bool has_levels() const { return !levels.empty(); }
};

struct IntegrateOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  /// Output times in (0, t_end). Empty: every accepted step is recorded.
  /// The initial and the final state are always recorded.
  std::vector<double> sample_times;
  int max_steps = 1'000'000;
  /// Integrate dx/ds = -f(x) instead; times are still reported as s >= 0.
  bool reverse_time = false;
  /// Optional event g(x); integration stops where g changes sign.
  std::function<double(const ReducedState&)> event;
};

/// Adaptive Dormand-Prince 5(4) integration of the reduced system over
/// [0, t_end] with dense output at the requested sample times. Halts early
/// (see TrajectoryMeta::stop) near the u = v singularity or at the edge of
/// the admissible box instead of throwing, so the partial path survives.
Trajectory integrate(const ReducedState& state0, const ModelParams& p, double t_end,
                     const IntegrateOptions& opts = {});

struct SaddleOptions {
  double rtol = 1e-10;
  double atol = 1e-13;
  /// Seed offset relative to ||x*||.
  double seed_scale = 1e-6;
  /// Reversed-time budget.
  double max_time = 1000.0;
  /// Output samples; 0 keeps every accepted step.
  int samples = 0;
  /// +1 / -1 forces the seed side along the stable eigenvector; 0 picks the
  /// side whose z-component moves toward z0.
  int branch = 0;
};

/// Approximates the stable manifold through x* from capital ratio z0: seeds
/// x* + e v_s along the stable eigenvector and integrates in reversed time
/// until z crosses z0. Returned in forward-time order, starting at z0 and
/// ending next to the steady state.
///
/// Throws Error(no_real_stable_eigenvector) unless exactly one eigenvalue is
/// stable and real, and Error(target_not_reached) if the reversed-time path
/// never crosses z0.
Trajectory saddle_path(const ModelParams& p, double z0, const SaddleOptions& opts = {});

/// Integrates kdot/k along the stored (z, q, u, v) path from k0 and fills
/// levels with k, h = k/z, c = q k.
Trajectory reconstruct_levels(Trajectory traj, double k0, const ModelParams& p);

/// Goods-sector growth rate of k along a reduced state.
double capital_growth(const ReducedState& s, const ModelParams& p);

/// Euclidean distance in (z, q, u, v).
double distance(const ReducedState& a, const ReducedState& b);

}  // namespace ceslab
