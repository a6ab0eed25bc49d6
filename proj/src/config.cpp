#include "trfem/config.hpp"

#include <cmath>
#include <fstream>

namespace trfem {

namespace {

[[noreturn]] void fail(const std::string& ctx, const std::string& msg) {
  throw ConfigError(ctx + ": " + msg);
}

const json& require(const json& j, const std::string& key,
                    const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) {
    fail(ctx, "missing field '" + key + "'");
  }
  return j.at(key);
}

double num(const json& j, const std::string& key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_number()) fail(ctx, "field '" + key + "' must be a number");
  return v.get<double>();
}

double num_or(const json& j, const std::string& key, double fallback,
              const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return num(j, key, ctx);
}

int integer(const json& j, const std::string& key, const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_number_integer()) fail(ctx, "field '" + key + "' must be an integer");
  return v.get<int>();
}

int integer_or(const json& j, const std::string& key, int fallback,
               const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return integer(j, key, ctx);
}

std::string str(const json& j, const std::string& key,
                const std::string& ctx) {
  const json& v = require(j, key, ctx);
  if (!v.is_string()) fail(ctx, "field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::string str_or(const json& j, const std::string& key,
                   const std::string& fallback, const std::string& ctx) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return str(j, key, ctx);
}

// Scalar or array of numbers -> vector.
std::vector<double> num_list(const json& v, const std::string& ctx) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number()) fail(ctx, "expected numeric array");
      out.push_back(e.get<double>());
    }
  } else {
    fail(ctx, "expected a number or array of numbers");
  }
  if (out.empty()) fail(ctx, "grid must be non-empty");
  return out;
}

// Either an explicit list or a log-spaced range
// {"log10_min": a, "log10_max": b, "per_decade": n}.
std::vector<double> load_grid(const json& v, const std::string& ctx) {
  if (v.is_object()) {
    const double lo = num(v, "log10_min", ctx);
    const double hi = num(v, "log10_max", ctx);
    const int per_decade = integer_or(v, "per_decade", 20, ctx);
    if (!(hi >= lo) || per_decade < 1) fail(ctx, "invalid log range");
    const int n = std::max(
        2, static_cast<int>(std::lround((hi - lo) * per_decade)) + 1);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] =
          std::pow(10.0, lo + (hi - lo) * i / (n - 1));
    }
    return out;
  }
  return num_list(v, ctx);
}

ProblemConfig parse_problem(const json& j) {
  const std::string ctx = "problem";
  ProblemConfig pc;
  pc.family = str(j, "family", ctx);
  if (pc.family != "bar1d" && pc.family != "axisymmetric" &&
      pc.family != "cube" && pc.family != "tube" &&
      pc.family != "indentation") {
    fail(ctx, "unknown family '" + pc.family + "'");
  }
  pc.elements = integer_or(j, "elements", 10, ctx);
  pc.n_per_edge = integer_or(j, "n_per_edge", 10, ctx);
  pc.direction = str_or(j, "direction", "tension", ctx);
  if (pc.direction != "tension" && pc.direction != "compression") {
    fail(ctx, "direction must be tension or compression");
  }
  pc.nr = integer_or(j, "nr", 4, ctx);
  pc.nc = integer_or(j, "nc", 40, ctx);
  pc.na = integer_or(j, "na", 25, ctx);
  pc.patch_fraction = num_or(j, "patch_fraction", 0.04, ctx);
  const json& m = require(j, "material", ctx);
  pc.model = str(m, "model", "material");
  if (pc.model == "vw") {
    pc.p1 = num_list(require(m, "A", "material"), "material.A");
    pc.p2 = num_list(require(m, "B", "material"), "material.B");
  } else if (pc.model == "mr") {
    pc.p1 = num_list(require(m, "mu", "material"), "material.mu");
    pc.p2 = num_list(require(m, "upsilon", "material"), "material.upsilon");
  } else {
    fail("material", "model must be vw or mr");
  }
  pc.bulk = num_list(require(m, "K", "material"), "material.K");
  return pc;
}

SolverConfig parse_solver(const json& j) {
  SolverConfig sc;
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    sc.disp_tol = num_or(s, "disp_tol", sc.disp_tol, "solver");
    sc.max_iter = integer_or(s, "max_iter", sc.max_iter, "solver");
    if (!(sc.disp_tol > 0.0)) fail("solver", "disp_tol must be positive");
    if (sc.max_iter < 1) fail("solver", "max_iter must be >= 1");
  }
  return sc;
}

void check_mode(const json& j, const std::string& expected) {
  if (j.contains("mode") && j.at("mode").is_string() &&
      j.at("mode").get<std::string>() != expected) {
    fail("mode", "config declares mode '" +
                     j.at("mode").get<std::string>() + "' but '" + expected +
                     "' was requested");
  }
}

GridSpec parse_grid_spec(const json& j, const std::string& ctx) {
  GridSpec g;
  g.min = num(j, "min", ctx);
  g.max = num(j, "max", ctx);
  g.count = integer(j, "count", ctx);
  if (g.count < 2 || !(g.max > g.min)) fail(ctx, "invalid grid");
  return g;
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] =
        min + (max - min) * i / (count - 1);
  }
  return out;
}

json load_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) {
    throw ConfigError("cannot open config file " + file.string());
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("parse error in " + file.string() + ": " + e.what());
  }
}

SolveJobConfig parse_solve_config(const json& j) {
  check_mode(j, "solve");
  SolveJobConfig c;
  c.problem = parse_problem(require(j, "problem", "config"));
  if (c.problem.p1.size() != 1 || c.problem.p2.size() != 1 ||
      c.problem.bulk.size() != 1) {
    fail("material", "solve configs require single-valued material parameters");
  }
  c.formulation = transform_from_string(str(j, "formulation", "config"));
  c.beta_sq = num_or(j, "beta_sq", 3.0, "config");
  for (const auto& v : num_list(require(j, "steps", "config"), "steps")) {
    c.steps.push_back(v);
  }
  c.solver = parse_solver(j);
  c.solver.transform = c.formulation;
  c.solver.beta_sq = c.beta_sq;
  if (j.contains("error_series")) {
    if (!j.at("error_series").is_boolean()) {
      fail("error_series", "must be a boolean");
    }
    c.error_series = j.at("error_series").get<bool>();
  }
  c.output_prefix = str_or(j, "output_prefix", "solve", "config");
  return c;
}

SweepJobConfig parse_sweep_config(const json& j) {
  check_mode(j, "sweep");
  SweepJobConfig c;
  c.problem = parse_problem(require(j, "problem", "config"));
  const json& fl = require(j, "formulations", "config");
  if (!fl.is_array() || fl.empty()) fail("formulations", "non-empty array required");
  for (const auto& f : fl) {
    if (!f.is_string()) fail("formulations", "entries must be strings");
    c.formulations.push_back(transform_from_string(f.get<std::string>()));
  }
  c.f1 = load_grid(require(j, "f1", "config"), "f1");
  c.f2 = load_grid(require(j, "f2", "config"), "f2");
  for (double v : c.f2) {
    if (!(std::abs(v) > 0.0)) fail("f2", "load values must be non-zero");
  }
  c.solver = parse_solver(j);
  c.beta_sq = num_or(j, "beta_sq", 3.0, "config");
  c.output = str_or(j, "output", "sweep.csv", "config");
  return c;
}

MetricsJobConfig parse_metrics_config(const json& j) {
  check_mode(j, "metrics");
  MetricsJobConfig c;
  if (j.contains("curves")) {
    const json& arr = j.at("curves");
    if (!arr.is_array()) fail("curves", "must be an array");
    for (const auto& e : arr) {
      CurveConfig cc;
      cc.name = str(e, "function", "curves");
      cc.params = e.contains("params") ? e.at("params") : json::object();
      cc.transform =
          transform_from_string(str_or(e, "transform", "identity", "curves"));
      cc.beta_sq = num_or(e, "beta_sq", 3.0, "curves");
      cc.grid = parse_grid_spec(require(e, "grid", "curves"), "curves.grid");
      cc.output = str(e, "output", "curves");
      c.curves.push_back(std::move(cc));
    }
  }
  if (j.contains("regions")) {
    const json& arr = j.at("regions");
    if (!arr.is_array()) fail("regions", "must be an array");
    for (const auto& e : arr) {
      RegionConfig rc;
      rc.name = str(e, "function", "regions");
      rc.params = e.contains("params") ? e.at("params") : json::object();
      rc.transform =
          transform_from_string(str_or(e, "transform", "arctan", "regions"));
      rc.beta_sq = num_or(e, "beta_sq", 3.0, "regions");
      rc.x = parse_grid_spec(require(e, "x", "regions"), "regions.x");
      rc.xn = parse_grid_spec(require(e, "xn", "regions"), "regions.xn");
      rc.sup_samples = integer_or(e, "sup_samples", 10001, "regions");
      rc.output = str(e, "output", "regions");
      c.regions.push_back(std::move(rc));
    }
  }
  if (c.curves.empty() && c.regions.empty()) {
    fail("config", "metrics config needs at least one curve or region");
  }
  return c;
}

MaterialParams make_material(const ProblemConfig& pc, double p1, double p2,
                             double bulk) {
  if (pc.model == "vw") return VWParams{p1, p2, bulk};
  return MRParams{p1, p2, bulk};
}

MaterialParams single_material(const ProblemConfig& pc) {
  return make_material(pc, pc.p1.at(0), pc.p2.at(0), pc.bulk.at(0));
}

Problem build_problem(const ProblemConfig& pc, const MaterialParams& mat) {
  if (pc.family == "bar1d") {
    if (pc.elements < 1) throw ConfigError("bar1d: elements must be >= 1");
    return build_bar_1d(pc.elements, mat);
  }
  if (pc.family == "axisymmetric") {
    if (pc.elements < 1) throw ConfigError("axisymmetric: elements must be >= 1");
    return build_axisymmetric_rod(pc.elements, mat);
  }
  if (pc.family == "cube") {
    if (pc.n_per_edge < 1) throw ConfigError("cube: n_per_edge must be >= 1");
    return build_hex_cube(pc.n_per_edge, mat,
                          pc.direction == "compression"
                              ? LoadDirection::Compression
                              : LoadDirection::Tension);
  }
  if (pc.family == "tube") {
    if (pc.nr < 1 || pc.nc < 3 || pc.na < 1) {
      throw ConfigError("tube: need nr >= 1, nc >= 3, na >= 1");
    }
    const auto* vw = std::get_if<VWParams>(&mat);
    if (!vw) throw ConfigError("tube: material model must be vw");
    return build_tube(*vw, pc.nr, pc.nc, pc.na);
  }
  if (pc.family == "indentation") {
    if (pc.n_per_edge < 3) {
      throw ConfigError("indentation: n_per_edge must be >= 3");
    }
    if (!(pc.patch_fraction > 0.0) || !(pc.patch_fraction < 1.0)) {
      throw ConfigError("indentation: patch_fraction must be in (0,1)");
    }
    const auto* mr = std::get_if<MRParams>(&mat);
    if (!mr) throw ConfigError("indentation: material model must be mr");
    return build_indentation(*mr, pc.n_per_edge, pc.patch_fraction);
  }
  throw ConfigError("unknown family " + pc.family);
}

ScalarFunction make_named_function(const std::string& name,
                                   const json& params) {
  const std::string ctx = "function " + name;
  if (name == "linear") {
    const double a = num_or(params, "a", 0.0, ctx);
    const double b = num_or(params, "b", 1.0, ctx);
    return ScalarFunction::with_derivatives(
        [a, b](double x) { return a + b * x; }, [b](double) { return b; },
        [](double) { return 0.0; });
  }
  if (name == "exp" || name == "exp_shifted") {
    const double A = num_or(params, "A", 1.0, ctx);
    const double B = num_or(params, "B", 1.0, ctx);
    const double off = (name == "exp_shifted") ? A : 0.0;
    return ScalarFunction::with_derivatives(
        [A, B, off](double x) { return A * std::exp(B * x) - off; },
        [A, B](double x) { return A * B * std::exp(B * x); },
        [A, B](double x) { return A * B * B * std::exp(B * x); });
  }
  if (name == "neo_hookean_sigma") {
    const int n = integer_or(params, "n", 0, ctx);
    if (n < 0 || n > 2) fail(ctx, "n must be 0, 1 or 2");
    const double dn = n;
    return ScalarFunction::with_derivatives(
        [n](double x) {
          return neo_hookean_sigma_n(x, static_cast<StressMeasure>(n));
        },
        [dn](double x) {
          return (2.0 - dn) * std::pow(x, 1.0 - dn) +
                 (1.0 + dn) * std::pow(x, -2.0 - dn);
        },
        [dn](double x) {
          return (2.0 - dn) * (1.0 - dn) * std::pow(x, -dn) -
                 (1.0 + dn) * (2.0 + dn) * std::pow(x, -3.0 - dn);
        });
  }
  if (name == "vw_uniaxial") {
    const VWParams p{num(params, "A", ctx), num(params, "B", ctx), 1.0};
    return ScalarFunction::with_derivatives(
        [p](double x) { return vw_uniaxial_P(x, p); },
        [p](double x) { return vw_uniaxial_dP(x, p); },
        [p](double x) {
          const double l = x;
          const double q = l * l + 2.0 / l - 3.0;
          const double dq = 2.0 * l - 2.0 / (l * l);
          const double d2q = 2.0 + 4.0 / (l * l * l);
          const double e = std::exp(p.B * q);
          return 2.0 * p.A *
                     (-6.0 / (l * l * l * l) +
                      2.0 * p.B * dq * (1.0 + 2.0 / (l * l * l)) +
                      (l - 1.0 / (l * l)) *
                          (p.B * d2q + p.B * p.B * dq * dq)) *
                     e +
                 12.0 * p.A / (l * l * l * l * l);
        });
  }
  if (name == "mr_uniaxial") {
    const MRParams p{num(params, "mu", ctx), num(params, "upsilon", ctx), 1.0};
    return ScalarFunction::with_derivatives(
        [p](double x) { return mr_uniaxial_P(x, p); },
        [p](double x) { return mr_uniaxial_dP(x, p); },
        [p](double x) {
          const double l = x;
          return p.mu * (-6.0 * p.upsilon / (l * l * l * l) -
                         12.0 * (1.0 - p.upsilon) / (l * l * l * l * l));
        });
  }
  fail(ctx, "unknown function name");
}

}  // namespace trfem
