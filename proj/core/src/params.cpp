#include "ceslab/params.hpp"

#include <sstream>
#include <string>

#include "ceslab/errors.hpp"

namespace ceslab {

namespace {

[[noreturn]] void reject(const std::string& field, double value, const char* rule) {
  std::ostringstream os;
  os.precision(17);
  os << field << " = " << value << " violates " << rule;
  throw ValidationError(field, os.str());
}

void require_finite(const std::string& field, double value) {
  if (!std::isfinite(value)) reject(field, value, "finite");
}

void require_unit_open(const std::string& field, double value) {
  require_finite(field, value);
  if (!(value > 0.0 && value < 1.0)) reject(field, value, "0 < x < 1");
}

void require_positive(const std::string& field, double value) {
  require_finite(field, value);
  if (!(value > 0.0)) reject(field, value, "x > 0");
}

void require_psi(const std::string& field, double value) {
  require_finite(field, value);
  if (!(value < 1.0)) reject(field, value, "psi < 1");
  if (std::abs(value) <= kPsiGuard) reject(field, value, "|psi| > 1e-9 (sigma = 1 is excluded)");
}

}  // namespace

double psi_from_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) reject("sigma", sigma, "sigma > 0");
  return (sigma - 1.0) / sigma;
}

double sigma_from_psi(double psi) {
  if (!(psi < 1.0)) reject("psi", psi, "psi < 1");
  return 1.0 / (1.0 - psi);
}

void validate(const ModelParams& p) {
  require_positive("A1", p.A1);
  require_positive("A2", p.A2);
  require_unit_open("alpha1", p.alpha1);
  require_unit_open("alpha2", p.alpha2);
  require_psi("psi1", p.psi1);
  require_psi("psi2", p.psi2);
  require_finite("delta_k", p.delta_k);
  if (p.delta_k < 0.0) reject("delta_k", p.delta_k, "x >= 0");
  require_finite("delta_h", p.delta_h);
  if (p.delta_h < 0.0) reject("delta_h", p.delta_h, "x >= 0");
  require_positive("rho", p.rho);
  require_finite("eps", p.eps);
  if (!(p.eps > 1.0)) reject("eps", p.eps, "eps > 1");
}

ModelParams benchmark_params(double psi1, double psi2) {
  ModelParams p;
  p.A1 = 1.05;
  p.A2 = 0.20;
  p.alpha1 = 0.6;
  p.alpha2 = 0.8;
  p.psi1 = psi1;
  p.psi2 = psi2;
  p.delta_k = 0.06;
  p.delta_h = 0.05;
  p.eps = 2.0;
  p.rho = 0.06;
  return p;
}

ReducedState ReducedState::make(double z, double q, double u, double v) {
  ReducedState s{z, q, u, v};
  validate(s);
  return s;
}

void validate(const ReducedState& s) {
  require_positive("z", s.z);
  require_positive("q", s.q);
  require_unit_open("u", s.u);
  require_unit_open("v", s.v);
}

LevelState LevelState::make(double k, double h, double c, double u, double v) {
  LevelState s{k, h, c, u, v};
  validate(s);
  return s;
}

void validate(const LevelState& s) {
  require_positive("k", s.k);
  require_positive("h", s.h);
  require_finite("c", s.c);
  if (s.c < 0.0) reject("c", s.c, "c >= 0");
  require_unit_open("u", s.u);
  require_unit_open("v", s.v);
}

}  // namespace ceslab
