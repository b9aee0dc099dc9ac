#include "ceslab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ceslab/errors.hpp"
#include "ceslab/model.hpp"
#include "ceslab/stability.hpp"
#include "ceslab/steady_state.hpp"

namespace ceslab {

namespace {

constexpr double kBoxEdge = 1e-9;
constexpr double kSingularGap = 1e-9;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
// Fourth-order continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

Vector4 axpy(const Vector4& x, double h, std::initializer_list<std::pair<double, const Vector4*>> terms) {
  Vector4 out = x;
  for (const auto& [coef, k] : terms)
    for (int i = 0; i < 4; ++i) out[i] += h * coef * (*k)[i];
  return out;
}

enum class Admissibility { ok, singular, outside };

Admissibility check(const Vector4& x) {
  for (double c : x)
    if (!std::isfinite(c)) return Admissibility::outside;
  if (!(x[0] > 0.0) || !(x[1] > 0.0)) return Admissibility::outside;
  if (!(x[2] > kBoxEdge && x[2] < 1.0 - kBoxEdge)) return Admissibility::outside;
  if (!(x[3] > kBoxEdge && x[3] < 1.0 - kBoxEdge)) return Admissibility::outside;
  if (std::abs(x[2] - x[3]) < kSingularGap) return Admissibility::singular;
  return Admissibility::ok;
}

struct DenseStep {
  Vector4 r1, r2, r3, r4, r5;
  double t0, h;

  Vector4 at(double t) const {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    Vector4 y;
    for (int i = 0; i < 4; ++i)
      y[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
    return y;
  }
};

class Dopri5 {
 public:
  Dopri5(const ModelParams& p, const IntegrateOptions& opts) : p_(p), opts_(opts) {}

  Trajectory run(const Vector4& x0, double t_end) {
    Trajectory traj;
    push(traj, 0.0, x0);
    if (t_end <= 0.0) return traj;

    std::vector<double> samples = opts_.sample_times;
    std::sort(samples.begin(), samples.end());
    std::size_t next_sample = 0;
    while (next_sample < samples.size() && samples[next_sample] <= 0.0) ++next_sample;

    double t = 0.0;
    Vector4 x = x0;
    Vector4 k1 = f(x);
    double h = initial_step(x, k1, t_end);
    const double min_step = 1e-14 * std::max(1.0, t_end);
    double g_prev = opts_.event ? opts_.event(to_state(x)) : 0.0;

    for (;;) {
      if (traj.meta.steps + traj.meta.rejected >= opts_.max_steps) {
        traj.meta.stop = StopReason::step_budget_exhausted;
        break;
      }
      if (h < min_step) {
        traj.meta.stop = pending_stop_ ? *pending_stop_ : StopReason::step_size_underflow;
        break;
      }
      const bool last = t + h >= t_end;
      if (last) h = t_end - t;

      Vector4 x_new, k7;
      double err = 0.0;
      DenseStep dense{};
      Admissibility adm = Admissibility::ok;
      try {
        const Vector4 k2 = f(axpy(x, h, {{a21, &k1}}));
        const Vector4 k3 = f(axpy(x, h, {{a31, &k1}, {a32, &k2}}));
        const Vector4 k4 = f(axpy(x, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        const Vector4 k5 = f(axpy(x, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        const Vector4 k6 = f(axpy(x, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
        x_new = axpy(x, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
        adm = check(x_new);
        if (adm == Admissibility::ok) {
          k7 = f(x_new);
          double sum = 0.0;
          for (int i = 0; i < 4; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            const double sc = opts_.atol + opts_.rtol * std::max(std::abs(x[i]), std::abs(x_new[i]));
            sum += (e / sc) * (e / sc);
          }
          err = std::sqrt(sum / 4.0);
          dense.t0 = t;
          dense.h = h;
          for (int i = 0; i < 4; ++i) {
            const double ydiff = x_new[i] - x[i];
            const double bspl = h * k1[i] - ydiff;
            dense.r1[i] = x[i];
            dense.r2[i] = ydiff;
            dense.r3[i] = bspl;
            dense.r4[i] = ydiff - h * k7[i] - bspl;
            dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
          }
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::singular_state) throw;
        adm = Admissibility::singular;
      }

      if (adm != Admissibility::ok || !std::isfinite(err)) {
        // Creep up to the boundary before giving up.
        pending_stop_ = adm == Admissibility::outside ? StopReason::left_domain : StopReason::singularity_reached;
        ++traj.meta.rejected;
        h *= 0.25;
        continue;
      }
      if (err > 1.0) {
        ++traj.meta.rejected;
        h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        continue;
      }

      // Accepted.
      ++traj.meta.steps;
      traj.meta.max_residual = std::max(traj.meta.max_residual, err);
      pending_stop_.reset();
      const double t_new = last ? t_end : t + h;

      double t_stop = t_new;
      bool event_hit = false;
      if (opts_.event) {
        const double g_new = opts_.event(to_state(x_new));
        if ((g_prev < 0.0) != (g_new < 0.0) || g_new == 0.0) {
          t_stop = locate_event(dense, t, t_new, g_prev);
          event_hit = true;
        }
        g_prev = g_new;
      }

      if (!samples.empty()) {
        while (next_sample < samples.size() && samples[next_sample] < t_stop) {
          push(traj, samples[next_sample], dense.at(samples[next_sample]));
          ++next_sample;
        }
      }
      if (event_hit) {
        push(traj, t_stop, t_stop == t_new ? x_new : dense.at(t_stop));
        traj.meta.stop = StopReason::target_reached;
        return traj;
      }
      if (samples.empty() || last) push(traj, t_new, x_new);

      t = t_new;
      x = x_new;
      k1 = k7;
      if (last) {
        traj.meta.stop = StopReason::completed;
        return traj;
      }
      const double fac = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h *= std::clamp(fac, 0.2, 5.0);
    }
    return traj;
  }

 private:
  Vector4 f(const Vector4& x) const {
    Vector4 dx = rhs_reduced(to_state(x), p_);
    if (opts_.reverse_time)
      for (double& c : dx) c = -c;
    return dx;
  }

  double initial_step(const Vector4& x, const Vector4& dx, double t_end) const {
    double d0 = 0.0, d1n = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double sc = opts_.atol + opts_.rtol * std::abs(x[i]);
      d0 += (x[i] / sc) * (x[i] / sc);
      d1n += (dx[i] / sc) * (dx[i] / sc);
    }
    d0 = std::sqrt(d0 / 4.0);
    d1n = std::sqrt(d1n / 4.0);
    double h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    return std::min(h, t_end);
  }

  double locate_event(const DenseStep& dense, double ta, double tb, double ga) const {
    for (int it = 0; it < 200 && tb - ta > 1e-15 * std::max(1.0, std::abs(tb)); ++it) {
      const double tm = 0.5 * (ta + tb);
      const double gm = opts_.event(to_state(dense.at(tm)));
      if ((gm < 0.0) == (ga < 0.0) && gm != 0.0) {
        ta = tm;
        ga = gm;
      } else {
        tb = tm;
      }
    }
    return tb;
  }

  static void push(Trajectory& traj, double t, const Vector4& x) {
    if (!traj.times.empty() && t <= traj.times.back()) return;
    traj.times.push_back(t);
    traj.states.push_back(to_state(x));
  }

  const ModelParams& p_;
  const IntegrateOptions& opts_;
  std::optional<StopReason> pending_stop_;
};

}  // namespace

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::completed: return "completed";
    case StopReason::target_reached: return "target_reached";
    case StopReason::singularity_reached: return "singularity_reached";
    case StopReason::left_domain: return "left_domain";
    case StopReason::step_size_underflow: return "step_size_underflow";
    case StopReason::step_budget_exhausted: return "step_budget_exhausted";
  }
  return "unknown";
}

Trajectory integrate(const ReducedState& state0, const ModelParams& p, double t_end,
                     const IntegrateOptions& opts) {
  validate(state0);
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) throw ValidationError("tol", "tolerances must be positive");
  if (std::abs(state0.u - state0.v) < kSingularGap)
    throw Error(ErrorKind::singular_state, "integrate: initial state has u == v");
  Dopri5 solver(p, opts);
  return solver.run(to_vector(state0), t_end);
}

double distance(const ReducedState& a, const ReducedState& b) {
  const double dz = a.z - b.z, dq = a.q - b.q, du = a.u - b.u, dv = a.v - b.v;
  return std::sqrt(dz * dz + dq * dq + du * du + dv * dv);
}

Trajectory saddle_path(const ModelParams& p, double z0, const SaddleOptions& opts) {
  const StabilityReport report = stability_report(p);
  const ReducedState star = report.steady.reduced();

  int stable_index = -1;
  int n_stable = 0;
  for (int i = 0; i < 4; ++i) {
    if (report.eigenvalues[i].real() < -kTolZero) {
      ++n_stable;
      stable_index = i;
    }
  }
  const double lambda_s = stable_index >= 0 ? report.eigenvalues[stable_index].real() : 0.0;
  if (n_stable != 1 ||
      std::abs(report.eigenvalues[stable_index].imag()) > 1e-12 * std::max(1.0, std::abs(lambda_s))) {
    throw Error(ErrorKind::no_real_stable_eigenvector,
                "saddle_path: need exactly one real stable eigenvalue");
  }

  if (std::abs(z0 - star.z) <= 1e-12 * star.z) {
    Trajectory single;
    single.times.push_back(0.0);
    single.states.push_back(star);
    single.meta.stop = StopReason::target_reached;
    return single;
  }

  const Vector4 vs = real_eigenvector(report.jacobian, lambda_s);
  int side = opts.branch;
  if (side == 0) {
    if (vs[0] == 0.0)
      throw Error(ErrorKind::target_not_reached, "saddle_path: stable direction does not move z");
    side = ((z0 > star.z) == (vs[0] > 0.0)) ? 1 : -1;
  }

  const Vector4 xs = to_vector(star);
  double xnorm = 0.0;
  for (double c : xs) xnorm += c * c;
  const double offset = side * opts.seed_scale * std::sqrt(xnorm);
  Vector4 seed;
  for (int i = 0; i < 4; ++i) seed[i] = xs[i] + offset * vs[i];

  IntegrateOptions io;
  io.rtol = opts.rtol;
  io.atol = opts.atol;
  io.reverse_time = true;
  io.event = [z0](const ReducedState& s) { return s.z - z0; };

  Trajectory back = integrate(to_state(seed), p, opts.max_time, io);
  if (back.meta.stop != StopReason::target_reached) {
    std::ostringstream os;
    os.precision(10);
    os << "saddle_path: reversed-time path stopped (" << to_string(back.meta.stop) << ") at z = "
       << back.states.back().z << " without crossing z0 = " << z0;
    throw Error(ErrorKind::target_not_reached, os.str());
  }

  if (opts.samples > 1) {
    // Second pass with uniform output in reversed time.
    const double span = back.times.back();
    io.sample_times.clear();
    for (int i = 1; i < opts.samples - 1; ++i) io.sample_times.push_back(span * i / (opts.samples - 1));
    back = integrate(to_state(seed), p, opts.max_time, io);
  }

  Trajectory fwd;
  fwd.meta = back.meta;
  const double span = back.times.back();
  for (std::size_t i = back.size(); i-- > 0;) {
    fwd.times.push_back(span - back.times[i]);
    fwd.states.push_back(back.states[i]);
  }
  return fwd;
}

double capital_growth(const ReducedState& s, const ModelParams& p) {
  const double w = w_of(s);
  return p.A1 * s.v / w * pow_pos(p1_of(w, p), 1.0 / p.psi1) - s.q - p.delta_k;
}

Trajectory reconstruct_levels(Trajectory traj, double k0, const ModelParams& p) {
  if (traj.empty()) throw ValidationError("trajectory", "reconstruct_levels: empty trajectory");
  if (!(k0 > 0.0)) throw ValidationError("k0", "reconstruct_levels: k0 must be positive");

  // ln k by Simpson's rule per interval; the midpoint state comes from the
  // cubic Hermite interpolant built with the vector field at both ends.
  const std::size_t n = traj.size();
  traj.levels.resize(n);
  double log_k = std::log(k0);
  Vector4 x_prev = to_vector(traj.states[0]);
  Vector4 f_prev = rhs_reduced(traj.states[0], p);
  double g_prev = capital_growth(traj.states[0], p);
  auto store = [&](std::size_t i) {
    const ReducedState& s = traj.states[i];
    const double k = std::exp(log_k);
    traj.levels[i] = LevelState{k, k / s.z, s.q * k, s.u, s.v};
  };
  store(0);
  for (std::size_t i = 1; i < n; ++i) {
    const double dt = traj.times[i] - traj.times[i - 1];
    const Vector4 x = to_vector(traj.states[i]);
    const Vector4 fx = rhs_reduced(traj.states[i], p);
    Vector4 mid;
    for (int j = 0; j < 4; ++j) mid[j] = 0.5 * (x_prev[j] + x[j]) + dt / 8.0 * (f_prev[j] - fx[j]);
    const double g = capital_growth(traj.states[i], p);
    const double g_mid = capital_growth(to_state(mid), p);
    log_k += dt / 6.0 * (g_prev + 4.0 * g_mid + g);
    store(i);
    x_prev = x;
    f_prev = fx;
    g_prev = g;
  }
  return traj;
}

}  // namespace ceslab
