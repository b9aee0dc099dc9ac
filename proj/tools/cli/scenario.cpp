#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "ceslab/errors.hpp"

namespace ceslab::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ValidationError(path, path + ": " + what);
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

double number(const json& obj, const std::string& path, const char* key) {
  const std::string where = path + "." + key;
  if (!obj.contains(key)) fail(where, "missing");
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "must be finite");
  return x;
}

std::optional<double> optional_number(const json& obj, const std::string& path, const char* key) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj, path, key);
}

int integer(const json& obj, const std::string& path, const char* key) {
  const std::string where = path + "." + key;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where, "expected an integer");
  return v.get<int>();
}

std::string text(const json& obj, const std::string& path, const char* key) {
  const std::string where = path + "." + key;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where, "expected a string");
  return v.get<std::string>();
}

// Exactly one of psi_i / sigma_i.
double substitution(const json& obj, int sector) {
  const std::string psi_key = "psi" + std::to_string(sector);
  const std::string sigma_key = "sigma" + std::to_string(sector);
  const bool has_psi = obj.contains(psi_key), has_sigma = obj.contains(sigma_key);
  if (has_psi == has_sigma) fail("params." + psi_key, "give exactly one of " + psi_key + " or " + sigma_key);
  if (has_psi) return number(obj, "params", psi_key.c_str());
  const double sigma = number(obj, "params", sigma_key.c_str());
  if (!(sigma > 0.0)) fail("params." + sigma_key, "must be positive");
  return psi_from_sigma(sigma);
}

ModelParams parse_params(const json& obj) {
  check_keys(obj, "params",
             {"A1", "A2", "alpha1", "alpha2", "psi1", "psi2", "sigma1", "sigma2", "delta_k", "delta_h", "eps", "rho"});
  ModelParams p;
  p.A1 = number(obj, "params", "A1");
  p.A2 = number(obj, "params", "A2");
  p.alpha1 = number(obj, "params", "alpha1");
  p.alpha2 = number(obj, "params", "alpha2");
  p.psi1 = substitution(obj, 1);
  p.psi2 = substitution(obj, 2);
  p.delta_k = number(obj, "params", "delta_k");
  p.delta_h = number(obj, "params", "delta_h");
  p.eps = number(obj, "params", "eps");
  p.rho = number(obj, "params", "rho");
  try {
    validate(p);
  } catch (const ValidationError& e) {
    fail("params." + e.field(), e.what());
  }
  return p;
}

}  // namespace

std::optional<Format> parse_format(const std::string& s) {
  if (s == "table") return Format::table;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  return std::nullopt;
}

std::optional<SweepTarget> parse_sweep_target(const std::string& s) {
  if (s == "1") return SweepTarget::sigma1;
  if (s == "2") return SweepTarget::sigma2;
  if (s == "both") return SweepTarget::both;
  return std::nullopt;
}

void apply_grid(SweepSpec& spec, const std::string& grid) {
  std::istringstream is(grid);
  char c1 = 0, c2 = 0;
  double lo = 0.0, hi = 0.0;
  int n = 0;
  if (!(is >> lo >> c1 >> hi >> c2 >> n) || c1 != ':' || c2 != ':' || is.peek() != EOF)
    fail("--grid", "expected lo:hi:n, got '" + grid + "'");
  spec.lo = lo;
  spec.hi = hi;
  spec.n = n;
  if (n == 1) spec.hi = std::max(hi, lo);
  if (!(lo > 0.0) || hi < lo || n < 1 || (n > 1 && !(hi > lo))) fail("--grid", "need 0 < lo < hi and n >= 1");
}

Scenario parse_scenario(const std::string& src, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(src);
  } catch (const json::parse_error& e) {
    // Message already carries "at line L, column C".
    throw ValidationError("<document>", origin + ": " + e.what());
  }
  check_keys(doc, "", {"name", "params", "initial", "baseline", "levels", "sweep", "trajectory", "format"});

  Scenario s;
  if (doc.contains("name")) s.name = text(doc, "", "name");
  if (!doc.contains("params")) fail("params", "missing");
  s.params = parse_params(doc.at("params"));

  if (doc.contains("initial")) {
    const json& o = doc.at("initial");
    check_keys(o, "initial", {"k0", "h0", "u0", "v0"});
    InitialLevels in{number(o, "initial", "k0"), number(o, "initial", "h0"), number(o, "initial", "u0"),
                     number(o, "initial", "v0")};
    if (!(in.k0 > 0.0)) fail("initial.k0", "must be positive");
    if (!(in.h0 > 0.0)) fail("initial.h0", "must be positive");
    if (!(in.u0 > 0.0 && in.u0 < 1.0)) fail("initial.u0", "must lie in (0,1)");
    if (!(in.v0 > 0.0 && in.v0 < 1.0)) fail("initial.v0", "must lie in (0,1)");
    s.initial = in;
  }

  if (doc.contains("baseline")) {
    const json& o = doc.at("baseline");
    check_keys(o, "baseline", {"k_bar", "h_bar", "u_bar", "v_bar"});
    BaselinePoint b{number(o, "baseline", "k_bar"), number(o, "baseline", "h_bar"), number(o, "baseline", "u_bar"),
                    number(o, "baseline", "v_bar")};
    if (!(b.k_bar > 0.0)) fail("baseline.k_bar", "must be positive");
    if (!(b.h_bar > 0.0)) fail("baseline.h_bar", "must be positive");
    if (!(b.u_bar > 0.0 && b.u_bar < 1.0)) fail("baseline.u_bar", "must lie in (0,1)");
    if (!(b.v_bar > 0.0 && b.v_bar < 1.0)) fail("baseline.v_bar", "must lie in (0,1)");
    s.baseline = b;
  }

  if (doc.contains("levels")) {
    const json& o = doc.at("levels");
    check_keys(o, "levels", {"h_star"});
    s.h_star = number(o, "levels", "h_star");
    if (!(s.h_star > 0.0)) fail("levels.h_star", "must be positive");
  }

  if (doc.contains("sweep")) {
    const json& o = doc.at("sweep");
    check_keys(o, "sweep", {"sigma", "lo", "hi", "n", "mode"});
    SweepSpec sw;
    if (o.contains("sigma")) {
      const json& v = o.at("sigma");
      const std::string t = v.is_number_integer() ? std::to_string(v.get<int>()) : text(o, "sweep", "sigma");
      const auto target = parse_sweep_target(t);
      if (!target) fail("sweep.sigma", "expected 1, 2 or \"both\"");
      sw.target = *target;
    }
    sw.lo = number(o, "sweep", "lo");
    sw.hi = number(o, "sweep", "hi");
    if (!o.contains("n")) fail("sweep.n", "missing");
    sw.n = integer(o, "sweep", "n");
    if (o.contains("mode")) {
      const std::string m = text(o, "sweep", "mode");
      if (m == "raw")
        sw.mode = SweepMode::raw;
      else if (m == "normalized")
        sw.mode = SweepMode::normalized;
      else
        fail("sweep.mode", "expected \"raw\" or \"normalized\"");
    }
    if (!(sw.lo > 0.0)) fail("sweep.lo", "must be positive");
    if (sw.n < 1) fail("sweep.n", "must be at least 1");
    if (sw.n > 1 && !(sw.hi > sw.lo)) fail("sweep.hi", "must exceed sweep.lo");
    s.sweep = sw;
  }

  if (doc.contains("trajectory")) {
    const json& o = doc.at("trajectory");
    check_keys(o, "trajectory", {"z0", "z0_factor", "samples", "max_time"});
    s.trajectory.z0 = optional_number(o, "trajectory", "z0");
    s.trajectory.z0_factor = optional_number(o, "trajectory", "z0_factor");
    if (s.trajectory.z0 && s.trajectory.z0_factor) fail("trajectory.z0", "give at most one of z0 or z0_factor");
    if (s.trajectory.z0 && !(*s.trajectory.z0 > 0.0)) fail("trajectory.z0", "must be positive");
    if (s.trajectory.z0_factor && !(*s.trajectory.z0_factor > 0.0)) fail("trajectory.z0_factor", "must be positive");
    if (o.contains("samples")) {
      s.trajectory.samples = integer(o, "trajectory", "samples");
      if (s.trajectory.samples < 0 || s.trajectory.samples == 1) fail("trajectory.samples", "must be 0 or >= 2");
    }
    if (o.contains("max_time")) {
      s.trajectory.max_time = number(o, "trajectory", "max_time");
      if (!(s.trajectory.max_time > 0.0)) fail("trajectory.max_time", "must be positive");
    }
  }

  if (doc.contains("format")) {
    s.format = parse_format(text(doc, "", "format"));
    if (!s.format) fail("format", "expected table, csv or json");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read scenario file '" + path + "'");
  return parse_scenario(buf.str(), path);
}

}  // namespace ceslab::cli
