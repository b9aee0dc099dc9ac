#pragma once

#include <string>
#include <vector>

#include "ceslab/params.hpp"
#include "ceslab/steady_state.hpp"

namespace ceslab {

enum class Sector { goods = 1, education = 2 };

/// Anchor point shared by a family of normalized CES technologies.
///
/// Every member of the family passes through (k_bar, h_bar, u_bar, v_bar)
/// with outputs y1_bar, y2_bar and a common marginal rate of substitution m
/// between effective human and effective physical capital.
struct Baseline {
  double w_bar = 0.0;    // k_bar v_bar / (h_bar u_bar)
  double tau_bar = 0.0;  // v_bar(1-u_bar) / (u_bar(1-v_bar))
  double m = 0.0;
  double y1_bar = 0.0;
  double y2_bar = 0.0;
  double k_bar = 0.0;
  double h_bar = 0.0;
  double u_bar = 0.0;
  double v_bar = 0.0;

  /// Builds a baseline from a point, an MRS and outputs; derives w_bar and
  /// tau_bar. Throws ValidationError on non-positive input.
  static Baseline from_point(double k_bar, double h_bar, double u_bar, double v_bar, double m,
                             double y1_bar, double y2_bar);
};

void validate(const Baseline& b);

struct MrsPair {
  double m1 = 0.0;
  double m2 = 0.0;
};

/// Sector MRS values (1-alpha1)/alpha1 w^(1-psi1) and
/// (1-alpha2)/alpha2 (w/tau)^(1-psi2). Throws Error(mrs_mismatch) when they
/// differ by more than 1e-6 relative.
MrsPair mrs_from_params(const ModelParams& p, double w_bar, double tau_bar);

/// Baseline of economy p at the given point: m from mrs_from_params, outputs
/// from the CES technologies.
Baseline baseline_from_economy(const ModelParams& p, double k_bar, double h_bar, double u_bar,
                               double v_bar);

/// Baseline at the balanced-growth point of p, with h_bar as level anchor
/// and k_bar = z* h_bar.
Baseline reference_baseline(const ModelParams& p, double h_bar = 1.0);

/// Guard band |sigma - 1| < 1e-3 excluded from sigma grids.
inline constexpr double kSigmaGuard = 1e-3;

double alpha_of_sigma(double sigma, const Baseline& b, Sector sector);
double A_of_sigma(double sigma, const Baseline& b, Sector sector);

/// Normalized economy: alpha_i(sigma_i), A_i(sigma_i); the remaining
/// parameters are copied from rest.
ModelParams normalized_params(const Baseline& b, double sigma1, double sigma2, const ModelParams& rest);

/// Physical-capital share at capital intensity w. Sector 2 uses w/tau;
/// tau is ignored for sector 1.
double share_pi(double sigma, const Baseline& b, Sector sector, double w, double tau);

/// Share at the baseline point; independent of sigma.
double baseline_share(const Baseline& b, Sector sector);

/// Sector output of the normalized family, via the share-ratio form.
double normalized_y(double sigma, const Baseline& b, Sector sector, double k, double h, double u,
                    double v);

struct IdentityResiduals {
  double lhs = 0.0;  // (w/w_bar)^psi, or its sector-2 analogue
  double rhs = 0.0;  // pi(1-pi_bar)/(pi_bar(1-pi))
  double residual() const { return lhs - rhs; }
};

IdentityResiduals identity_wwb(double sigma, const Baseline& b, Sector sector, double w, double tau);

/// d pi / d psi = pi(1-pi) ln(x/x_bar), x = w (sector 1) or w/tau (sector 2).
double dpi_dpsi(double sigma, const Baseline& b, Sector sector, double w, double tau);

/// d y / d psi = -(y/psi^2)[pi ln(pi_bar/pi) + (1-pi) ln((1-pi_bar)/(1-pi))]
/// at fixed inputs (k, h, u, v).
double dy_dpsi(double sigma, const Baseline& b, Sector sector, double k, double h, double u, double v);

/// (1/eps)[y1_bar/(k_bar v_bar) pi_bar (pi_bar/pi1)^((1-psi1)/psi1) - rho - delta_k].
double r_star_closed_form(double sigma1, const Baseline& b, const ModelParams& p, double pi1);

/// Common growth rate of the normalized economy with sigma1 and sigma2 taken
/// from p: re-solves its steady state for pi1* and applies the closed form.
double r_star_of_sigma(double sigma1, const Baseline& b, const ModelParams& p);

/// Closed-form d r*/d psi1 at capital intensity w, with the share
/// responding to psi1 through share_pi at that w.
double dr_dpsi(double sigma1, const Baseline& b, const ModelParams& p, double w);

/// Same, at the normalized economy's own steady-state w*.
double dr_dpsi(double sigma1, const Baseline& b, const ModelParams& p);

/// Total derivative d r*/d psi1 with the steady state re-solved, by central
/// differences of r_star_of_sigma (numerical, no closed form exists).
double dr_dpsi_total_numeric(double sigma1, const Baseline& b, const ModelParams& p, double step = 1e-5);

/// One economy's row block in a comparison.
struct EconomySummary {
  ModelParams params;
  SteadyState steady;
  double k_star = 0.0;  // z* h_bar
  double h_star = 0.0;  // h_bar
  double y1_star = 0.0;
  double y2_star = 0.0;
};

struct ComparisonRow {
  std::string name;
  double a = 0.0;
  double b = 0.0;
  /// +1 when a > b, -1 when a < b, 0 when equal to 1e-12 relative.
  int order = 0;
  /// Rows outside the verdict (z*, q*) are informational.
  bool in_verdict = true;
};

struct ComparisonTable {
  EconomySummary first;
  EconomySummary second;
  std::vector<ComparisonRow> rows;
  /// True when every verdict row has order >= 0 and at least one is +1.
  bool first_dominates = false;
  bool all_equal = false;
};

/// Steady states of two economies that share every parameter except the
/// substitution parameters, with level variables evaluated at the common
/// human-capital anchor b.h_bar. Throws Error(baseline_mismatch) otherwise.
ComparisonTable compare_economies(const ModelParams& a, const ModelParams& b, const Baseline& baseline);

}  // namespace ceslab
