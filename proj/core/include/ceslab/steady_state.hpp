#pragma once

#include "ceslab/params.hpp"

namespace ceslab {

/// Balanced-growth gap P(w): the goods-sector marginal product of capital
/// minus the education-sector marginal product of human capital, net of the
/// depreciation differential. Strictly decreasing in w; its root is w*.
double gap_P(double w, const ModelParams& p);

/// Common growth rate implied by capital intensity w.
double growth_rate_at(double w, const ModelParams& p);

struct RootOptions {
  double rel_tol = 1e-12;   // final bracket width relative to the root
  int max_expansions = 40;  // decades searched on each side of w = 1
  int max_iterations = 500;
};

struct RootResult {
  double w = 0.0;
  int iterations = 0;
  int evaluations = 0;
  /// False if the sampled gap values were not strictly decreasing in w.
  bool monotone = true;
};

/// Root of gap_P by geometric bracketing from w = 1 followed by bisection
/// (in log w) with a safeguarded secant step. Throws Error(no_bracket).
RootResult solve_w(const ModelParams& p, const RootOptions& opts = {});

struct SteadyState {
  double w_star = 0.0;
  double z_star = 0.0;
  double q_star = 0.0;
  double u_star = 0.0;
  double v_star = 0.0;
  double r_star = 0.0;
  double tau0 = 0.0;
  double pi1k = 0.0;        // physical-capital share, goods sector
  double pi2k = 0.0;        // physical-capital share, education sector
  double tvc_margin = 0.0;  // rho + (eps - 1) r*, must be positive
  bool monotone_gap = true;

  ReducedState reduced() const { return {z_star, q_star, u_star, v_star}; }
};

/// Solves the balanced growth path. Validates params first; throws
/// AllocationOutOfRange if u* or v* leaves (0,1) and Error(tvc_violation) if
/// the transversality margin is not positive.
SteadyState steady_state(const ModelParams& p, const RootOptions& opts = {});

/// rho + (eps - 1) r*. Positive means both transversality limits are negative.
double transversality(const ModelParams& p, double r_star);

}  // namespace ceslab
