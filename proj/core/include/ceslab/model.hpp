#pragma once

#include "ceslab/params.hpp"

namespace ceslab {

/// Effective capital intensity of the goods sector, kv/(hu) = (v/u) z.
double w_of(const ReducedState& s);

/// v(1-u) / (u(1-v)). Throws ValidationError unless u, v lie in (0,1).
double tau_of(double u, double v);

/// alpha1(1-alpha2) / (alpha2(1-alpha1)).
double theta_of(double alpha1, double alpha2);

double p1_of(double w, const ModelParams& p);
double p2_of(double w, const ModelParams& p);

/// A [alpha x^psi + (1-alpha) y^psi]^(1/psi) for x, y >= 0.
double ces(double A, double alpha, double psi, double x, double y);

/// Goods-sector output A1 [alpha1 (kv)^psi1 + (1-alpha1)(hu)^psi1]^(1/psi1).
double y1_of(double k, double h, double u, double v, const ModelParams& p);
/// Education-sector output; uses k(1-v) and h(1-u).
double y2_of(double k, double h, double u, double v, const ModelParams& p);

/// Every auxiliary scalar of the differential system, evaluated at one state.
struct AuxBundle {
  double w = 0.0;
  double P1 = 0.0;
  double P2 = 0.0;
  double D = 0.0;
  double P = 0.0;      // growth-rate gap of the two costates
  double T = 0.0;
  double G1 = 0.0;
  double G2 = 0.0;
  double Q = 0.0;      // P1 P2
  double R = 0.0;      // (1-psi1)(1-psi2) T
  double P_eps = 0.0;
  double H = 0.0;      // w^-1 P1^(1/psi1 - 1) P_eps

  /// R == 0 makes the u and v equations undefined.
  bool singular() const { return R == 0.0; }
};

/// Computes the whole bundle at state s. Does not divide by u - v.
AuxBundle aux_of(const ReducedState& s, const ModelParams& p);

/// mu/lambda = A1 alpha1 / (A2 alpha2 theta) P1^(1/psi1-1) / P2^(1/psi2-1).
double costate_ratio(double w, const ModelParams& p);

/// Proportional growth rates xdot/x of the five level variables.
struct GrowthRates {
  double k = 0.0;
  double h = 0.0;
  double c = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// Right-hand side of the level system. Throws Error(singular_state) when
/// u == v or R == 0.
GrowthRates rhs_full(const LevelState& s, const ModelParams& p);

}  // namespace ceslab
