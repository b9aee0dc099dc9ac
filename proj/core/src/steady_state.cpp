#include "ceslab/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include "ceslab/errors.hpp"
#include "ceslab/model.hpp"

namespace ceslab {

namespace {

double capital_marginal_product(double w, const ModelParams& p) {
  return p.alpha1 * p.A1 * pow_pos(w, p.psi1 - 1.0) * pow_pos(p1_of(w, p), 1.0 / p.psi1 - 1.0);
}

class GapSampler {
 public:
  explicit GapSampler(const ModelParams& p) : p_(p) {}

  double operator()(double w) {
    const double g = gap_P(w, p_);
    samples_.emplace_back(w, g);
    return g;
  }

  int count() const { return static_cast<int>(samples_.size()); }

  // Samples closer than kResolution (relative) sit below the rounding floor
  // of the gap and are not compared.
  bool decreasing() {
    std::sort(samples_.begin(), samples_.end());
    std::size_t last = 0;
    for (std::size_t i = 1; i < samples_.size(); ++i) {
      if (samples_[i].first - samples_[last].first <= kResolution * samples_[i].first) continue;
      if (!(samples_[i].second < samples_[last].second)) return false;
      last = i;
    }
    return true;
  }

 private:
  static constexpr double kResolution = 1e-8;
  const ModelParams& p_;
  std::vector<std::pair<double, double>> samples_;
};

}  // namespace

double gap_P(double w, const ModelParams& p) {
  return capital_marginal_product(w, p) -
         (1.0 - p.alpha2) * p.A2 * pow_pos(p2_of(w, p), 1.0 / p.psi2 - 1.0) - (p.delta_k - p.delta_h);
}

double growth_rate_at(double w, const ModelParams& p) {
  return (capital_marginal_product(w, p) - p.rho - p.delta_k) / p.eps;
}

RootResult solve_w(const ModelParams& p, const RootOptions& opts) {
  GapSampler gap(p);
  RootResult result;

  double lo = 1.0;
  double hi = 1.0;
  double f_lo = gap(1.0);
  double f_hi = f_lo;
  if (f_lo == 0.0) {
    result.w = 1.0;
    result.evaluations = gap.count();
    return result;
  }

  // The gap decreases in w: a positive value means the root lies above.
  const double factor = f_lo > 0.0 ? 10.0 : 0.1;
  int expansions = 0;
  for (;;) {
    if (expansions == opts.max_expansions) {
      std::ostringstream os;
      os << "gap_P keeps the sign of P(1) = " << f_lo << " over " << opts.max_expansions
         << " decades";
      throw Error(ErrorKind::no_bracket, os.str());
    }
    const double next = (factor > 1.0 ? hi : lo) * factor;
    const double f_next = gap(next);
    ++expansions;
    if (!std::isfinite(f_next)) {
      throw Error(ErrorKind::no_bracket, "gap_P is not finite while bracketing");
    }
    if (factor > 1.0) {
      lo = hi;
      f_lo = f_hi;
      hi = next;
      f_hi = f_next;
    } else {
      hi = lo;
      f_hi = f_lo;
      lo = next;
      f_lo = f_next;
    }
    if (f_next == 0.0) {
      result.w = next;
      result.evaluations = gap.count();
      result.monotone = gap.decreasing();
      return result;
    }
    if ((f_lo > 0.0) != (f_hi > 0.0)) break;
  }

  // Invariant: f_lo > 0 > f_hi.
  double root = std::sqrt(lo * hi);
  bool last_was_secant = false;
  double last_width = hi - lo;
  for (int it = 0; it < opts.max_iterations; ++it) {
    result.iterations = it + 1;
    const double width = hi - lo;
    if (width <= opts.rel_tol * hi) break;

    // Secant candidate, accepted only strictly inside the bracket and only
    // while it keeps shrinking the bracket at least as fast as bisection.
    double candidate = lo - f_lo * (hi - lo) / (f_hi - f_lo);
    const bool secant_ok = std::isfinite(candidate) && candidate > lo && candidate < hi &&
                           !(last_was_secant && width > 0.5 * last_width);
    if (!secant_ok) candidate = std::sqrt(lo * hi);
    if (!(candidate > lo && candidate < hi)) candidate = 0.5 * (lo + hi);
    last_was_secant = secant_ok;
    last_width = width;

    const double f = gap(candidate);
    root = candidate;
    if (f == 0.0) {
      lo = hi = candidate;
      break;
    }
    if (f > 0.0) {
      lo = candidate;
      f_lo = f;
    } else {
      hi = candidate;
      f_hi = f;
    }
    root = std::abs(f_lo) < std::abs(f_hi) ? lo : hi;
  }
  if (hi - lo > opts.rel_tol * hi) {
    throw Error(ErrorKind::no_convergence, "solve_w: bracket did not shrink to tolerance");
  }

  result.w = root;
  result.evaluations = gap.count();
  result.monotone = gap.decreasing();
  return result;
}

double transversality(const ModelParams& p, double r_star) { return p.rho + (p.eps - 1.0) * r_star; }

SteadyState steady_state(const ModelParams& p, const RootOptions& opts) {
  validate(p);
  const RootResult root = solve_w(p, opts);
  const double w = root.w;

  SteadyState s;
  s.w_star = w;
  s.monotone_gap = root.monotone;
  s.r_star = growth_rate_at(w, p);

  const double P1 = p1_of(w, p);
  const double P2 = p2_of(w, p);
  const double theta = theta_of(p.alpha1, p.alpha2);

  s.u_star = 1.0 - (s.r_star + p.delta_h) / (p.A2 * pow_pos(P2, 1.0 / p.psi2));
  if (!(s.u_star > 0.0 && s.u_star < 1.0)) throw AllocationOutOfRange("u*", s.u_star);

  s.tau0 = pow_pos(w, (p.psi1 - p.psi2) / (1.0 - p.psi2)) * pow_pos(theta, 1.0 / (1.0 - p.psi2));
  s.v_star = s.tau0 * s.u_star / (1.0 + (s.tau0 - 1.0) * s.u_star);
  if (!(s.v_star > 0.0 && s.v_star < 1.0)) throw AllocationOutOfRange("v*", s.v_star);

  const double P_eps = p.alpha1 * (p.eps * s.v_star - 1.0) * pow_pos(w, p.psi1) +
                       p.eps * (1.0 - p.alpha1) * s.v_star;
  s.q_star = (p.A1 / w * P_eps * pow_pos(P1, 1.0 / p.psi1 - 1.0) + p.rho - p.delta_k * (p.eps - 1.0)) /
             p.eps;
  s.z_star = w * s.u_star / s.v_star;

  s.pi1k = p.alpha1 * pow_pos(w, p.psi1) / P1;
  s.pi2k = (P2 - (1.0 - p.alpha2)) / P2;

  s.tvc_margin = transversality(p, s.r_star);
  if (!(s.tvc_margin > 0.0)) {
    std::ostringstream os;
    os << "transversality margin rho + (eps-1) r* = " << s.tvc_margin << " is not positive";
    throw Error(ErrorKind::tvc_violation, os.str());
  }
  return s;
}

}  // namespace ceslab
