#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "ceslab/errors.hpp"
#include "cli/commands.hpp"

using namespace ceslab::cli;

namespace {

struct Common {
  std::vector<std::string> scenarios;
  std::string format;
  std::string out;
};

void add_common(CLI::App* cmd, Common& c, int n_scenarios) {
  auto* opt = cmd->add_option("--scenario", c.scenarios, "scenario JSON file")->required();
  if (n_scenarios > 1) opt->expected(n_scenarios);
  cmd->add_option("--format", c.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("--out", c.out, "write output here instead of stdout");
}

Format pick_format(const Common& c, const Scenario& s) {
  if (!c.format.empty()) return *parse_format(c.format);
  return s.format.value_or(Format::table);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (std::fflush(stdout) != 0) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open output file '" + path + "'");
  f << text;
  f.close();
  if (!f) throw IoError("cannot write output file '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced growth, stability and normalization of a two-sector CES growth model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ces_lab 0.1.0");

  Common common;

  auto* steady = app.add_subcommand("steady", "balanced-growth steady state");
  add_common(steady, common, 1);
  SteadyOptions steady_opts;
  steady->add_option("--tol", steady_opts.tol, "root bracket width, relative (default 1e-12)");

  auto* stability = app.add_subcommand("stability", "Jacobian, eigenvalues and classification");
  Common stability_common;
  stability->add_option("--scenario", stability_common.scenarios, "scenario JSON file");
  stability->add_option("--format", stability_common.format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  stability->add_option("--out", stability_common.out, "write output here instead of stdout");
  StabilityOptions stability_opts;
  stability->add_option("--tol", stability_opts.tol, "zero band for eigenvalue real parts (default 1e-3)");
  stability->add_option("--debug-matrix", stability_opts.debug_matrix, "classify 16 row-major entries")
      ->group("");

  auto* sweep = app.add_subcommand("sweep", "steady states over a sigma grid");
  add_common(sweep, common, 1);
  SweepOptions sweep_opts;
  std::string sweep_sigma;
  sweep->add_option("--tol", sweep_opts.tol, "root bracket width, relative");
  sweep->add_option("--grid", sweep_opts.grid, "lo:hi:n");
  sweep->add_option("--sigma", sweep_sigma, "1, 2 or both")->check(CLI::IsMember({"1", "2", "both"}));

  auto* compare = app.add_subcommand("compare", "two economies side by side");
  add_common(compare, common, 2);

  auto* trajectory = app.add_subcommand("trajectory", "saddle-path trajectory as CSV");
  add_common(trajectory, common, 1);
  TrajectoryOptions traj_opts;
  trajectory->add_option("--tol", traj_opts.tol, "integrator relative tolerance (default 1e-10)");
  trajectory->add_option("--samples", traj_opts.samples, "uniform output samples; 0 keeps every step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    std::string text;
    std::string out;
    if (stability->parsed()) {
      const Common& c = stability_common;
      out = c.out;
      if (c.scenarios.empty() && !stability_opts.debug_matrix)
        throw ceslab::ValidationError("--scenario", "--scenario is required");
      std::optional<Scenario> s;
      if (!c.scenarios.empty()) s = load_scenario(c.scenarios.front());
      const Format f = c.format.empty() ? (s ? s->format.value_or(Format::table) : Format::table)
                                        : *parse_format(c.format);
      text = render(cmd_stability(s ? &*s : nullptr, stability_opts), f);
    } else {
      out = common.out;
      const Scenario s = load_scenario(common.scenarios.front());
      const Format f = pick_format(common, s);
      if (steady->parsed()) {
        text = render(cmd_steady(s, steady_opts), f);
      } else if (sweep->parsed()) {
        if (!sweep_sigma.empty()) sweep_opts.target = parse_sweep_target(sweep_sigma);
        sweep_opts.threads = sweep_threads();
        text = render(cmd_sweep(s, sweep_opts), f);
      } else if (compare->parsed()) {
        const Scenario second = load_scenario(common.scenarios.at(1));
        text = render(cmd_compare(s, second), f);
      } else if (trajectory->parsed()) {
        text = render(cmd_trajectory(s, traj_opts), f);
      }
    }
    emit(text, out);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ces_lab: %s\n", e.what());
    return exit_code(e);
  }
  return 0;
}
