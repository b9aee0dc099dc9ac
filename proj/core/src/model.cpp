#include "ceslab/model.hpp"

#include <algorithm>
#include <cmath>

#include "ceslab/errors.hpp"

namespace ceslab {

namespace {

// Exponents shared by P2 and T.
double theta_exponent(const ModelParams& p) { return -p.psi2 / (1.0 - p.psi2); }
double w_exponent(const ModelParams& p) { return p.psi2 * (1.0 - p.psi1) / (1.0 - p.psi2); }

// alpha2 theta^(-psi2/(1-psi2)) w^(psi2(1-psi1)/(1-psi2)) without the alpha2 factor.
double education_power_term(double w, const ModelParams& p) {
  const double theta = theta_of(p.alpha1, p.alpha2);
  return pow_pos(theta, theta_exponent(p)) * pow_pos(w, w_exponent(p));
}

}  // namespace

double w_of(const ReducedState& s) { return (s.v / s.u) * s.z; }

double tau_of(double u, double v) {
  if (!(u > 0.0 && u < 1.0)) throw ValidationError("u", "tau requires 0 < u < 1");
  if (!(v > 0.0 && v < 1.0)) throw ValidationError("v", "tau requires 0 < v < 1");
  return v * (1.0 - u) / (u * (1.0 - v));
}

double theta_of(double alpha1, double alpha2) {
  return alpha1 * (1.0 - alpha2) / (alpha2 * (1.0 - alpha1));
}

double p1_of(double w, const ModelParams& p) {
  return p.alpha1 * pow_pos(w, p.psi1) + 1.0 - p.alpha1;
}

double p2_of(double w, const ModelParams& p) {
  return p.alpha2 * education_power_term(w, p) + 1.0 - p.alpha2;
}

double ces(double A, double alpha, double psi, double x, double y) {
  if (x > 0.0 && y > 0.0) {
    // Factor out the larger input so the bracket stays O(1).
    const double scale = std::max(x, y);
    const double bracket = alpha * pow_pos(x / scale, psi) + (1.0 - alpha) * pow_pos(y / scale, psi);
    return A * scale * pow_pos(bracket, 1.0 / psi);
  }
  // One input is zero: with psi < 0 the zero input is essential.
  if (psi < 0.0) return 0.0;
  if (x > 0.0) return A * pow_pos(alpha, 1.0 / psi) * x;
  if (y > 0.0) return A * pow_pos(1.0 - alpha, 1.0 / psi) * y;
  return 0.0;
}

double y1_of(double k, double h, double u, double v, const ModelParams& p) {
  return ces(p.A1, p.alpha1, p.psi1, k * v, h * u);
}

double y2_of(double k, double h, double u, double v, const ModelParams& p) {
  return ces(p.A2, p.alpha2, p.psi2, k * (1.0 - v), h * (1.0 - u));
}

AuxBundle aux_of(const ReducedState& s, const ModelParams& p) {
  AuxBundle a;
  a.w = w_of(s);
  const double w = a.w;
  const double w_psi1 = pow_pos(w, p.psi1);
  const double edu = education_power_term(w, p);

  a.P1 = p.alpha1 * w_psi1 + 1.0 - p.alpha1;
  a.P2 = p.alpha2 * edu + 1.0 - p.alpha2;

  const double P1_inv = pow_pos(a.P1, 1.0 / p.psi1);
  const double P2_inv = pow_pos(a.P2, 1.0 / p.psi2);
  const double P1_marg = pow_pos(a.P1, 1.0 / p.psi1 - 1.0);
  const double P2_marg = pow_pos(a.P2, 1.0 / p.psi2 - 1.0);

  a.D = p.A2 * (1.0 - s.u) * P2_inv - p.A1 * s.v / w * P1_inv + p.delta_k - p.delta_h;
  a.P = p.alpha1 * p.A1 * pow_pos(w, p.psi1 - 1.0) * P1_marg - (1.0 - p.alpha2) * p.A2 * P2_marg -
        (p.delta_k - p.delta_h);
  a.T = p.alpha1 * (1.0 - p.alpha2) * w_psi1 - p.alpha2 * (1.0 - p.alpha1) * edu;
  a.G1 = (p.psi1 - p.psi2) * s.u + 1.0 - p.psi1;
  a.G2 = (p.psi1 - p.psi2) * s.v + 1.0 - p.psi1;
  a.Q = a.P1 * a.P2;
  a.R = (1.0 - p.psi1) * (1.0 - p.psi2) * a.T;
  a.P_eps = p.alpha1 * (p.eps * s.v - 1.0) * w_psi1 + p.eps * (1.0 - p.alpha1) * s.v;
  a.H = P1_marg * a.P_eps / w;
  return a;
}

double costate_ratio(double w, const ModelParams& p) {
  const double theta = theta_of(p.alpha1, p.alpha2);
  return p.A1 * p.alpha1 / (p.A2 * p.alpha2 * theta) * pow_pos(p1_of(w, p), 1.0 / p.psi1 - 1.0) /
         pow_pos(p2_of(w, p), 1.0 / p.psi2 - 1.0);
}

GrowthRates rhs_full(const LevelState& s, const ModelParams& p) {
  if (s.u == s.v) throw Error(ErrorKind::singular_state, "rhs_full: u == v");
  const ReducedState r{s.k / s.h, s.c / s.k, s.u, s.v};
  const AuxBundle a = aux_of(r, p);
  if (a.singular()) throw Error(ErrorKind::singular_state, "rhs_full: R == 0");

  const double q = r.q;
  GrowthRates g;
  g.k = p.A1 * s.v / a.w * pow_pos(a.P1, 1.0 / p.psi1) - q - p.delta_k;
  g.h = p.A2 * pow_pos(a.P2, 1.0 / p.psi2) * (1.0 - s.u) - p.delta_h;
  g.c = -(p.rho + p.delta_k) / p.eps +
        p.alpha1 * p.A1 * pow_pos(a.w, p.psi1 - 1.0) / p.eps * pow_pos(a.P1, 1.0 / p.psi1 - 1.0);
  g.u = (a.D + q + a.Q * a.G2 * a.P / a.R) * (1.0 - s.u) / (s.u - s.v);
  g.v = (a.D + q + a.Q * a.G1 * a.P / a.R) * (1.0 - s.v) / (s.u - s.v);
  return g;
}

}  // namespace ceslab
