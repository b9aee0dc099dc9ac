#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>

#include "ceslab/dynamics.hpp"
#include "ceslab/errors.hpp"
#include "ceslab/model.hpp"
#include "ceslab/normalization.hpp"
#include "ceslab/stability.hpp"
#include "ceslab/steady_state.hpp"

namespace ceslab::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

RootOptions root_options(const std::optional<double>& tol) {
  RootOptions r;
  if (tol) {
    if (!(*tol > 0.0)) throw ValidationError("--tol", "--tol must be positive");
    r.rel_tol = *tol;
  }
  return r;
}

Baseline scenario_baseline(const Scenario& s) {
  if (s.baseline) {
    const BaselinePoint& b = *s.baseline;
    return baseline_from_economy(s.params, b.k_bar, b.h_bar, b.u_bar, b.v_bar);
  }
  return reference_baseline(s.params, s.h_star);
}

std::int64_t i64(int x) { return static_cast<std::int64_t>(x); }

Matrix4 parse_matrix(const std::string& text) {
  std::string t = text;
  for (char& c : t)
    if (c == ',' || c == ';') c = ' ';
  std::istringstream is(t);
  Matrix4 m{};
  int n = 0;
  double x = 0.0;
  while (is >> x) {
    if (n == 16) break;
    m[n / 4][n % 4] = x;
    ++n;
  }
  if (n != 16 || !is.eof()) throw ValidationError("--debug-matrix", "--debug-matrix expects 16 numbers");
  return m;
}

void add_stability_sections(const StabilityReport& r, double tol_zero, Report& out) {
  Section jac{"jacobian", {"row", "z", "q", "u", "v"}, {}};
  const char* names[] = {"z", "q", "u", "v"};
  for (int i = 0; i < 4; ++i)
    jac.add({std::string(names[i]), r.jacobian[i][0], r.jacobian[i][1], r.jacobian[i][2], r.jacobian[i][3]});
  out.sections.push_back(std::move(jac));

  Section ev{"eigenvalues", {"index", "re", "im"}, {}};
  for (int i = 0; i < 4; ++i) ev.add({i64(i + 1), r.eigenvalues[i].real(), r.eigenvalues[i].imag()});
  out.sections.push_back(std::move(ev));

  Section cls{"classification", {"classification", "n_stable", "n_zero", "tol_zero"}, {}};
  cls.add({std::string(to_string(r.classification)), i64(r.n_stable), i64(r.n_zero), tol_zero});
  out.sections.push_back(std::move(cls));
}

std::string monotone_label(const std::vector<double>& v) {
  if (v.size() < 2) return "n/a";
  bool up = true, down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    up = up && v[i] > v[i - 1];
    down = down && v[i] < v[i - 1];
  }
  return up ? "increasing" : down ? "decreasing" : "none";
}

}  // namespace

Report cmd_steady(const Scenario& s, const SteadyOptions& o) {
  const SteadyState st = steady_state(s.params, root_options(o.tol));
  const double k = st.z_star * s.h_star;
  Report r;
  Section sec{"steady_state",
              {"w*", "z*", "q*", "u*", "v*", "r*", "pi1*", "pi2*", "tau0", "tvc_margin", "k*", "h*", "y1*", "y2*"},
              {}};
  sec.add({st.w_star, st.z_star, st.q_star, st.u_star, st.v_star, st.r_star, st.pi1k, st.pi2k, st.tau0,
           st.tvc_margin, k, s.h_star, y1_of(k, s.h_star, st.u_star, st.v_star, s.params),
           y2_of(k, s.h_star, st.u_star, st.v_star, s.params)});
  r.sections.push_back(std::move(sec));
  if (!st.monotone_gap) r.footer.emplace_back("warning", std::string("sampled gap values not strictly decreasing"));
  return r;
}

Report cmd_stability(const Scenario* s, const StabilityOptions& o) {
  const double tol_zero = o.tol.value_or(kTolZero);
  if (!(tol_zero > 0.0)) throw ValidationError("--tol", "--tol must be positive");
  StabilityReport rep;
  if (o.debug_matrix) {
    rep.jacobian = parse_matrix(*o.debug_matrix);
    rep.eigenvalues = eigen4(rep.jacobian);
    classify(rep, tol_zero);
  } else {
    rep = stability_report(s->params, tol_zero);
  }
  Report r;
  add_stability_sections(rep, tol_zero, r);
  return r;
}

Report cmd_sweep(const Scenario& s, const SweepOptions& o) {
  SweepSpec spec = s.sweep.value_or(SweepSpec{});
  if (o.grid) apply_grid(spec, *o.grid);
  if (o.target) spec.target = *o.target;
  if (spec.n < 1) throw ValidationError("sweep", "sweep needs a grid: scenario 'sweep' or --grid lo:hi:n");
  const RootOptions ropts = root_options(o.tol);

  std::optional<Baseline> baseline;
  if (spec.mode == SweepMode::normalized) baseline = scenario_baseline(s);

  std::vector<double> grid(spec.n);
  for (int i = 0; i < spec.n; ++i)
    grid[i] = spec.n == 1 ? spec.lo : spec.lo + (spec.hi - spec.lo) * i / (spec.n - 1);

  struct Row {
    double alpha = kNaN, A = kNaN;
    SteadyState st;
    double y1 = kNaN, y2 = kNaN;
    std::string error;
  };
  std::vector<Row> rows(grid.size());

  auto solve_point = [&](std::size_t i) {
    Row& row = rows[i];
    const double sigma = grid[i];
    try {
      if (std::abs(sigma - 1.0) < kSigmaGuard) throw ValidationError("sigma", "sigma inside the guard band around 1");
      const double s1 = spec.target == SweepTarget::sigma2 ? s.params.sigma1() : sigma;
      const double s2 = spec.target == SweepTarget::sigma1 ? s.params.sigma2() : sigma;
      ModelParams p = s.params;
      if (baseline) {
        p = normalized_params(*baseline, s1, s2, s.params);
      } else {
        p.psi1 = psi_from_sigma(s1);
        p.psi2 = psi_from_sigma(s2);
      }
      const bool second = spec.target == SweepTarget::sigma2;
      row.alpha = second ? p.alpha2 : p.alpha1;
      row.A = second ? p.A2 : p.A1;
      row.st = steady_state(p, ropts);
      const double k = row.st.z_star * s.h_star;
      row.y1 = y1_of(k, s.h_star, row.st.u_star, row.st.v_star, p);
      row.y2 = y2_of(k, s.h_star, row.st.u_star, row.st.v_star, p);
    } catch (const std::exception& e) {
      row.error = e.what();
    }
  };

  const int workers = std::max(1, std::min<int>(o.threads, static_cast<int>(grid.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) solve_point(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < grid.size();) solve_point(i);
      });
    for (auto& t : pool) t.join();
  }

  Report r;
  Section sec{"sweep",
              {"sigma", "alpha", "A", "w*", "z*", "u*", "v*", "q*", "r*", "pi1", "pi2", "y1*", "y2*", "error"},
              {}};
  std::vector<std::vector<double>> columns(11);
  int failed = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Row& row = rows[i];
    if (!row.error.empty()) {
      ++failed;
      sec.add({grid[i], row.alpha, row.A, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, row.error});
      continue;
    }
    const SteadyState& st = row.st;
    const double vals[] = {st.w_star, st.z_star, st.u_star, st.v_star, st.q_star, st.r_star,
                           st.pi1k,   st.pi2k,   row.y1,    row.y2};
    std::vector<Cell> cells{grid[i], row.alpha, row.A};
    for (int c = 0; c < 10; ++c) {
      cells.emplace_back(vals[c]);
      columns[c].push_back(vals[c]);
    }
    cells.emplace_back(std::string());
    sec.add(std::move(cells));
  }
  const char* target = spec.target == SweepTarget::sigma1 ? "1" : spec.target == SweepTarget::sigma2 ? "2" : "both";
  r.footer.emplace_back("sigma", std::string(target));
  r.footer.emplace_back("mode", std::string(spec.mode == SweepMode::raw ? "raw" : "normalized"));
  r.footer.emplace_back("rows", i64(static_cast<int>(grid.size())));
  r.footer.emplace_back("failed", i64(failed));
  for (int c = 0; c < 10; ++c)
    r.footer.emplace_back("monotone." + sec.columns[3 + c], monotone_label(columns[c]));
  r.sections.push_back(std::move(sec));
  return r;
}

Report cmd_compare(const Scenario& first, const Scenario& second) {
  const Baseline b = scenario_baseline(first);
  const ComparisonTable t = compare_economies(first.params, second.params, b);
  const std::string na = first.name.empty() ? "first" : first.name;
  const std::string nb = second.name.empty() ? "second" : second.name;
  Report r;
  Section sec{"comparison", {"quantity", na, nb, "order", "in_verdict"}, {}};
  for (const ComparisonRow& row : t.rows) {
    const char* ord = row.order > 0 ? ">" : row.order < 0 ? "<" : "=";
    sec.add({row.name, row.a, row.b, std::string(ord), row.in_verdict});
  }
  r.sections.push_back(std::move(sec));
  r.footer.emplace_back("first_dominates", t.first_dominates);
  r.footer.emplace_back("all_equal", t.all_equal);
  r.footer.emplace_back("h_bar", b.h_bar);
  return r;
}

Report cmd_trajectory(const Scenario& s, const TrajectoryOptions& o) {
  const SteadyState st = steady_state(s.params);
  double z0 = 0.0;
  if (s.trajectory.z0) {
    z0 = *s.trajectory.z0;
  } else if (s.trajectory.z0_factor) {
    z0 = *s.trajectory.z0_factor * st.z_star;
  } else if (s.initial) {
    z0 = s.initial->k0 / s.initial->h0;
  } else {
    throw ValidationError("initial", "trajectory needs initial.k0/h0 or trajectory.z0 / z0_factor");
  }
  const double k0 = s.initial ? s.initial->k0 : z0 * s.h_star;

  SaddleOptions so;
  so.max_time = s.trajectory.max_time;
  so.samples = o.samples.value_or(s.trajectory.samples);
  if (so.samples < 0 || so.samples == 1) throw ValidationError("--samples", "--samples must be 0 or >= 2");
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ValidationError("--tol", "--tol must be positive");
    so.rtol = *o.tol;
    so.atol = *o.tol * 1e-3;
  }
  const Trajectory t = reconstruct_levels(saddle_path(s.params, z0, so), k0, s.params);

  Report r;
  Section sec{"trajectory", {"t", "z", "q", "u", "v", "k", "h", "c", "y1", "y2"}, {}};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const ReducedState& x = t.states[i];
    const LevelState& l = t.levels[i];
    sec.add({t.times[i], x.z, x.q, x.u, x.v, l.k, l.h, l.c, y1_of(l.k, l.h, x.u, x.v, s.params),
             y2_of(l.k, l.h, x.u, x.v, s.params)});
  }
  r.sections.push_back(std::move(sec));
  r.footer.emplace_back("stop", std::string(to_string(t.meta.stop)));
  r.footer.emplace_back("steps", i64(t.meta.steps));
  r.footer.emplace_back("rejected", i64(t.meta.rejected));
  r.footer.emplace_back("z_star", st.z_star);
  r.footer.emplace_back("terminal_distance", distance(t.states.back(), st.reduced()));
  return r;
}

int sweep_threads() {
  if (const char* env = std::getenv("CES_LAB_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(std::min<long>(n, 1024));
    throw ValidationError("CES_LAB_THREADS", "CES_LAB_THREADS must be a positive integer");
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const IoError*>(&e)) return 5;
  if (dynamic_cast<const ValidationError*>(&e)) return 2;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->kind()) {
      case ErrorKind::validation:
        return 2;
      case ErrorKind::baseline_mismatch:
      case ErrorKind::mrs_mismatch:
        return 4;
      default:
        return 3;
    }
  }
  return 3;
}

}  // namespace ceslab::cli
