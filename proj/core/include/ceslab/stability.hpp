#pragma once

#include <string_view>

#include "ceslab/eigen4.hpp"
#include "ceslab/params.hpp"
#include "ceslab/steady_state.hpp"

namespace ceslab {

/// Rows and columns of the reduced system are ordered (z, q, u, v).
inline Vector4 to_vector(const ReducedState& s) { return {s.z, s.q, s.u, s.v}; }
inline ReducedState to_state(const Vector4& x) { return {x[0], x[1], x[2], x[3]}; }

/// Denominator guards of the reduced system.
inline constexpr double kSingularUV = 1e-12;
inline constexpr double kSingularR = 1e-14;

/// (zdot, qdot, udot, vdot) of the stationary system. Throws
/// Error(singular_state) when |u - v| < 1e-12 or |R| < 1e-14.
Vector4 rhs_reduced(const ReducedState& s, const ModelParams& p);

/// Central-difference Jacobian of rhs_reduced. Column j uses the step
/// step_scale * max(1, |x_j|); a singular probe is retried once at a tenth of
/// the step before the error propagates.
Matrix4 jacobian_fd(const ReducedState& s, const ModelParams& p, double step_scale = 1e-6);

enum class Classification { saddle_path, source, sink, degenerate };

std::string_view to_string(Classification c);

/// Real parts within this band count as zero.
inline constexpr double kTolZero = 1e-3;

struct StabilityReport {
  SteadyState steady;
  Matrix4 jacobian{};
  Eigenvalues4 eigenvalues{};
  int n_stable = 0;
  int n_zero = 0;
  Classification classification = Classification::degenerate;
};

/// Counts eigenvalues and classifies: saddle_path with exactly one real part
/// below -tol_zero, sink with all four there, source with none, degenerate
/// otherwise.
void classify(StabilityReport& report, double tol_zero = kTolZero);

/// Steady state, finite-difference Jacobian there, its spectrum and class.
StabilityReport stability_report(const ModelParams& p, double tol_zero = kTolZero);

}  // namespace ceslab
