#include "ceslab/normalization.hpp"

#include <cmath>
#include <sstream>

#include "ceslab/errors.hpp"
#include "ceslab/model.hpp"

namespace ceslab {

namespace {

double checked_psi(double sigma) {
  const double psi = psi_from_sigma(sigma);
  if (std::abs(psi) <= kPsiGuard)
    throw ValidationError("sigma", "sigma = 1 is excluded from normalization");
  return psi;
}

// Sector-specific anchors: capital intensity, output, effective inputs.
struct SectorAnchor {
  double x_bar;       // w_bar or w_bar / tau_bar
  double y_bar;
  double labour_bar;  // h_bar u_bar or h_bar (1 - u_bar)
  double capital_bar; // k_bar v_bar or k_bar (1 - v_bar)
};

SectorAnchor anchor(const Baseline& b, Sector s) {
  if (s == Sector::goods) return {b.w_bar, b.y1_bar, b.h_bar * b.u_bar, b.k_bar * b.v_bar};
  return {b.w_bar / b.tau_bar, b.y2_bar, b.h_bar * (1.0 - b.u_bar), b.k_bar * (1.0 - b.v_bar)};
}

double intensity(Sector s, double w, double tau) { return s == Sector::goods ? w : w / tau; }

// Capital share and its complement, each formed directly so that 1 - pi
// keeps full precision when pi is close to one.
struct Split {
  double pi;
  double rest;
};

Split share_split(double psi, const SectorAnchor& an, double m, double x) {
  const double t = pow_pos(an.x_bar, 1.0 - psi) * pow_pos(x, psi);
  return {t / (t + m), m / (t + m)};
}

double share_at(double psi, const SectorAnchor& an, double m, double x) {
  return share_split(psi, an, m, x).pi;
}

Split baseline_split(const SectorAnchor& an, double m) { return {an.x_bar / (an.x_bar + m), m / (an.x_bar + m)}; }

void require_positive(const char* field, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << field << " must be positive and finite, got " << x;
    throw ValidationError(field, os.str());
  }
}

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

Baseline Baseline::from_point(double k_bar, double h_bar, double u_bar, double v_bar, double m,
                              double y1_bar, double y2_bar) {
  require_positive("k_bar", k_bar);
  require_positive("h_bar", h_bar);
  if (!(u_bar > 0.0 && u_bar < 1.0)) throw ValidationError("u_bar", "u_bar must lie in (0,1)");
  if (!(v_bar > 0.0 && v_bar < 1.0)) throw ValidationError("v_bar", "v_bar must lie in (0,1)");
  Baseline b;
  b.k_bar = k_bar;
  b.h_bar = h_bar;
  b.u_bar = u_bar;
  b.v_bar = v_bar;
  b.m = m;
  b.y1_bar = y1_bar;
  b.y2_bar = y2_bar;
  b.w_bar = k_bar * v_bar / (h_bar * u_bar);
  b.tau_bar = tau_of(u_bar, v_bar);
  validate(b);
  return b;
}

void validate(const Baseline& b) {
  require_positive("w_bar", b.w_bar);
  require_positive("tau_bar", b.tau_bar);
  require_positive("m", b.m);
  require_positive("y1_bar", b.y1_bar);
  require_positive("y2_bar", b.y2_bar);
  require_positive("k_bar", b.k_bar);
  require_positive("h_bar", b.h_bar);
  if (!(b.u_bar > 0.0 && b.u_bar < 1.0)) throw ValidationError("u_bar", "u_bar must lie in (0,1)");
  if (!(b.v_bar > 0.0 && b.v_bar < 1.0)) throw ValidationError("v_bar", "v_bar must lie in (0,1)");
  if (rel_diff(b.tau_bar, tau_of(b.u_bar, b.v_bar)) > 1e-12)
    throw ValidationError("tau_bar", "tau_bar inconsistent with (u_bar, v_bar)");
  if (rel_diff(b.w_bar, b.k_bar * b.v_bar / (b.h_bar * b.u_bar)) > 1e-12)
    throw ValidationError("w_bar", "w_bar inconsistent with (k_bar, h_bar, u_bar, v_bar)");
}

MrsPair mrs_from_params(const ModelParams& p, double w_bar, double tau_bar) {
  require_positive("w_bar", w_bar);
  require_positive("tau_bar", tau_bar);
  MrsPair pair;
  pair.m1 = (1.0 - p.alpha1) / p.alpha1 * pow_pos(w_bar, 1.0 - p.psi1);
  pair.m2 = (1.0 - p.alpha2) / p.alpha2 * pow_pos(w_bar / tau_bar, 1.0 - p.psi2);
  if (rel_diff(pair.m1, pair.m2) > 1e-6) {
    std::ostringstream os;
    os.precision(10);
    os << "sector MRS values differ: m1 = " << pair.m1 << ", m2 = " << pair.m2;
    throw Error(ErrorKind::mrs_mismatch, os.str());
  }
  return pair;
}

Baseline baseline_from_economy(const ModelParams& p, double k_bar, double h_bar, double u_bar,
                               double v_bar) {
  validate(p);
  const double w_bar = k_bar * v_bar / (h_bar * u_bar);
  const double tau_bar = tau_of(u_bar, v_bar);
  const MrsPair mrs = mrs_from_params(p, w_bar, tau_bar);
  return Baseline::from_point(k_bar, h_bar, u_bar, v_bar, mrs.m1, y1_of(k_bar, h_bar, u_bar, v_bar, p),
                              y2_of(k_bar, h_bar, u_bar, v_bar, p));
}

Baseline reference_baseline(const ModelParams& p, double h_bar) {
  const SteadyState s = steady_state(p);
  return baseline_from_economy(p, s.z_star * h_bar, h_bar, s.u_star, s.v_star);
}

double alpha_of_sigma(double sigma, const Baseline& b, Sector sector) {
  const double psi = checked_psi(sigma);
  const SectorAnchor an = anchor(b, sector);
  const double t = pow_pos(an.x_bar, 1.0 - psi);
  return t / (t + b.m);
}

double A_of_sigma(double sigma, const Baseline& b, Sector sector) {
  const double psi = checked_psi(sigma);
  const SectorAnchor an = anchor(b, sector);
  const double ratio = (pow_pos(an.x_bar, 1.0 - psi) + b.m) / (an.x_bar + b.m);
  return an.y_bar / an.labour_bar * pow_pos(ratio, 1.0 / psi);
}

ModelParams normalized_params(const Baseline& b, double sigma1, double sigma2, const ModelParams& rest) {
  ModelParams p = rest;
  p.psi1 = checked_psi(sigma1);
  p.psi2 = checked_psi(sigma2);
  p.alpha1 = alpha_of_sigma(sigma1, b, Sector::goods);
  p.A1 = A_of_sigma(sigma1, b, Sector::goods);
  p.alpha2 = alpha_of_sigma(sigma2, b, Sector::education);
  p.A2 = A_of_sigma(sigma2, b, Sector::education);
  return p;
}

double share_pi(double sigma, const Baseline& b, Sector sector, double w, double tau) {
  const double psi = checked_psi(sigma);
  return share_at(psi, anchor(b, sector), b.m, intensity(sector, w, tau));
}

double baseline_share(const Baseline& b, Sector sector) {
  const double x = anchor(b, sector).x_bar;
  return x / (x + b.m);
}

double normalized_y(double sigma, const Baseline& b, Sector sector, double k, double h, double u,
                    double v) {
  const double psi = checked_psi(sigma);
  const SectorAnchor an = anchor(b, sector);
  const double capital = sector == Sector::goods ? k * v : k * (1.0 - v);
  const double labour = sector == Sector::goods ? h * u : h * (1.0 - u);
  const double pi = share_at(psi, an, b.m, capital / labour);
  const double pi_bar = baseline_share(b, sector);
  return an.y_bar / an.capital_bar * pow_pos(pi_bar / pi, 1.0 / psi) * capital;
}

IdentityResiduals identity_wwb(double sigma, const Baseline& b, Sector sector, double w, double tau) {
  const double psi = checked_psi(sigma);
  const SectorAnchor an = anchor(b, sector);
  const double x = intensity(sector, w, tau);
  const Split s = share_split(psi, an, b.m, x);
  const Split bar = baseline_split(an, b.m);
  IdentityResiduals r;
  r.lhs = pow_pos(x / an.x_bar, psi);
  r.rhs = s.pi * bar.rest / (bar.pi * s.rest);
  return r;
}

double dpi_dpsi(double sigma, const Baseline& b, Sector sector, double w, double tau) {
  const double psi = checked_psi(sigma);
  const SectorAnchor an = anchor(b, sector);
  const double x = intensity(sector, w, tau);
  const Split s = share_split(psi, an, b.m, x);
  return s.pi * s.rest * std::log(x / an.x_bar);
}

double dy_dpsi(double sigma, const Baseline& b, Sector sector, double k, double h, double u, double v) {
  const double psi = checked_psi(sigma);
  const SectorAnchor an = anchor(b, sector);
  const double capital = sector == Sector::goods ? k * v : k * (1.0 - v);
  const double labour = sector == Sector::goods ? h * u : h * (1.0 - u);
  const Split s = share_split(psi, an, b.m, capital / labour);
  const Split bar = baseline_split(an, b.m);
  const double y = normalized_y(sigma, b, sector, k, h, u, v);
  const double bracket = s.pi * std::log(bar.pi / s.pi) + s.rest * std::log(bar.rest / s.rest);
  return -y / (psi * psi) * bracket;
}

double r_star_closed_form(double sigma1, const Baseline& b, const ModelParams& p, double pi1) {
  const double psi = checked_psi(sigma1);
  const double pi_bar = baseline_share(b, Sector::goods);
  const double mpk = b.y1_bar / (b.k_bar * b.v_bar) * pi_bar * pow_pos(pi_bar / pi1, (1.0 - psi) / psi);
  return (mpk - p.rho - p.delta_k) / p.eps;
}

double r_star_of_sigma(double sigma1, const Baseline& b, const ModelParams& p) {
  const ModelParams np = normalized_params(b, sigma1, p.sigma2(), p);
  const SteadyState s = steady_state(np);
  return r_star_closed_form(sigma1, b, np, s.pi1k);
}

double dr_dpsi(double sigma1, const Baseline& b, const ModelParams& p, double w) {
  const double psi = checked_psi(sigma1);
  const SectorAnchor an = anchor(b, Sector::goods);
  const Split s = share_split(psi, an, b.m, w);
  const Split bar = baseline_split(an, b.m);
  const double weight = (1.0 - psi) * s.rest;
  const double braces = (1.0 - weight) * std::log(bar.pi / s.pi) + weight * std::log(bar.rest / s.rest);
  return -b.y1_bar / (b.k_bar * b.v_bar) * bar.pi / (p.eps * psi * psi) *
         pow_pos(bar.pi / s.pi, (1.0 - psi) / psi) * braces;
}

double dr_dpsi(double sigma1, const Baseline& b, const ModelParams& p) {
  const ModelParams np = normalized_params(b, sigma1, p.sigma2(), p);
  const SteadyState s = steady_state(np);
  return dr_dpsi(sigma1, b, np, s.w_star);
}

double dr_dpsi_total_numeric(double sigma1, const Baseline& b, const ModelParams& p, double step) {
  const double psi = checked_psi(sigma1);
  const double up = r_star_of_sigma(sigma_from_psi(psi + step), b, p);
  const double dn = r_star_of_sigma(sigma_from_psi(psi - step), b, p);
  return (up - dn) / (2.0 * step);
}

namespace {

EconomySummary summarize(const ModelParams& p, double h_bar) {
  EconomySummary e;
  e.params = p;
  e.steady = steady_state(p);
  e.h_star = h_bar;
  e.k_star = e.steady.z_star * h_bar;
  e.y1_star = y1_of(e.k_star, h_bar, e.steady.u_star, e.steady.v_star, p);
  e.y2_star = y2_of(e.k_star, h_bar, e.steady.u_star, e.steady.v_star, p);
  return e;
}

bool same_except_sigma(const ModelParams& a, const ModelParams& b) {
  ModelParams bb = b;
  bb.psi1 = a.psi1;
  bb.psi2 = a.psi2;
  return a == bb;
}

}  // namespace

ComparisonTable compare_economies(const ModelParams& a, const ModelParams& b, const Baseline& baseline) {
  if (!same_except_sigma(a, b))
    throw Error(ErrorKind::baseline_mismatch, "compared economies differ in more than (sigma1, sigma2)");
  validate(baseline);

  ComparisonTable t;
  t.first = summarize(a, baseline.h_bar);
  t.second = summarize(b, baseline.h_bar);

  auto add = [&](const char* name, double x, double y) {
    ComparisonRow row{name, x, y, 0, true};
    const double scale = std::max(std::abs(x), std::abs(y));
    if (std::abs(x - y) > 1e-12 * scale) row.order = x > y ? 1 : -1;
    t.rows.push_back(row);
  };
  const SteadyState& sa = t.first.steady;
  const SteadyState& sb = t.second.steady;
  add("k*", t.first.k_star, t.second.k_star);
  add("pi1*", sa.pi1k, sb.pi1k);
  add("pi2*", sa.pi2k, sb.pi2k);
  add("u*", sa.u_star, sb.u_star);
  add("v*", sa.v_star, sb.v_star);
  add("r*", sa.r_star, sb.r_star);
  add("y1*", t.first.y1_star, t.second.y1_star);
  add("y2*", t.first.y2_star, t.second.y2_star);
  // Reported alongside; not part of the dominance verdict.
  const std::size_t verdict_rows = t.rows.size();
  add("z*", sa.z_star, sb.z_star);
  add("q*", sa.q_star, sb.q_star);

  bool any_up = false, any_down = false, all_eq = true;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i].order != 0) all_eq = false;
    if (i >= verdict_rows) {
      t.rows[i].in_verdict = false;
      continue;
    }
    any_up |= t.rows[i].order > 0;
    any_down |= t.rows[i].order < 0;
  }
  t.first_dominates = any_up && !any_down;
  t.all_equal = all_eq;
  return t;
}

}  // namespace ceslab
