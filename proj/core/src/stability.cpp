#include "ceslab/stability.hpp"

#include <algorithm>
#include <cmath>

#include "ceslab/errors.hpp"
#include "ceslab/model.hpp"

namespace ceslab {

Vector4 rhs_reduced(const ReducedState& s, const ModelParams& p) {
  const double gap = s.u - s.v;
  if (std::abs(gap) < kSingularUV) throw Error(ErrorKind::singular_state, "rhs_reduced: |u - v| < 1e-12");
  const AuxBundle a = aux_of(s, p);
  if (std::abs(a.R) < kSingularR) throw Error(ErrorKind::singular_state, "rhs_reduced: |R| < 1e-14");

  const double qp = a.Q * a.P / a.R;
  Vector4 dx;
  dx[0] = -(a.D + s.q) * s.z;
  dx[1] = (s.q - p.A1 * a.H / p.eps - (p.rho - (p.eps - 1.0) * p.delta_k) / p.eps) * s.q;
  dx[2] = (a.D + s.q + a.G2 * qp) * s.u * (1.0 - s.u) / gap;
  dx[3] = (a.D + s.q + a.G1 * qp) * s.v * (1.0 - s.v) / gap;
  return dx;
}

Matrix4 jacobian_fd(const ReducedState& s, const ModelParams& p, double step_scale) {
  const Vector4 x = to_vector(s);
  Matrix4 jac{};
  for (int j = 0; j < 4; ++j) {
    double h = step_scale * std::max(1.0, std::abs(x[j]));
    Vector4 fp, fm;
    for (int attempt = 0;; ++attempt) {
      Vector4 xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      try {
        fp = rhs_reduced(to_state(xp), p);
        fm = rhs_reduced(to_state(xm), p);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::singular_state || attempt > 0) throw;
        h *= 0.1;
      }
    }
    for (int i = 0; i < 4; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
  }
  return jac;
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::saddle_path: return "saddle_path";
    case Classification::source: return "source";
    case Classification::sink: return "sink";
    case Classification::degenerate: return "degenerate";
  }
  return "degenerate";
}

void classify(StabilityReport& report, double tol_zero) {
  report.n_stable = 0;
  report.n_zero = 0;
  for (const auto& ev : report.eigenvalues) {
    if (ev.real() < -tol_zero) ++report.n_stable;
    else if (std::abs(ev.real()) <= tol_zero) ++report.n_zero;
  }
  if (report.n_stable == 1) report.classification = Classification::saddle_path;
  else if (report.n_stable == 4) report.classification = Classification::sink;
  else if (report.n_stable == 0) report.classification = Classification::source;
  else report.classification = Classification::degenerate;
}

StabilityReport stability_report(const ModelParams& p, double tol_zero) {
  StabilityReport report;
  report.steady = steady_state(p);
  report.jacobian = jacobian_fd(report.steady.reduced(), p);
  report.eigenvalues = eigen4(report.jacobian);
  classify(report, tol_zero);
  return report;
}

}  // namespace ceslab
