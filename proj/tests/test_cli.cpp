#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "trfem/harness.hpp"

using namespace trfem;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("trfem_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json sweep_config_json() {
  return json::parse(R"({
    "mode": "sweep",
    "problem": {
      "family": "bar1d",
      "elements": 10,
      "material": {"model": "vw", "A": 1.0, "B": [10.0, 100.0], "K": 10.0}
    },
    "formulations": ["identity", "log"],
    "f1": [1e-4],
    "f2": [0.5, 5.0],
    "solver": {"max_iter": 40},
    "output": "sweep.csv"
  })");
}

}  // namespace

TEST_CASE("malformed JSON raises a config error") {
  const fs::path dir = temp_dir("badjson");
  const fs::path file = dir / "bad.json";
  std::ofstream(file) << "{ not json";
  CHECK_THROWS_AS(load_json_file(file), ConfigError);
  CHECK_THROWS_AS(run_single(file, dir), ConfigError);
}

TEST_CASE("missing fields are diagnosed by name") {
  const json j = json::parse(R"({"problem": {"family": "bar1d"}})");
  try {
    parse_solve_config(j);
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("material") != std::string::npos);
  }
  const json bad_family = json::parse(
      R"({"problem": {"family": "pyramid",
          "material": {"model": "vw", "A": 1, "B": 1, "K": 1}},
          "formulation": "log", "steps": [1.0]})");
  CHECK_THROWS_AS(parse_solve_config(bad_family), ConfigError);
}

TEST_CASE("mode mismatch is rejected") {
  json j = sweep_config_json();
  j["mode"] = "solve";
  CHECK_THROWS_AS(parse_sweep_config(j), ConfigError);
}

TEST_CASE("single-point sweep agrees with a single solve") {
  const fs::path dir = temp_dir("singlepoint");
  json sweep = sweep_config_json();
  sweep["problem"]["material"]["B"] = 100.0;
  sweep["f2"] = {10.0};
  sweep["formulations"] = {"log"};
  run_sweep(parse_sweep_config(sweep), dir, 1);

  const json single = json::parse(R"({
    "mode": "solve",
    "problem": {
      "family": "bar1d",
      "elements": 10,
      "material": {"model": "vw", "A": 1.0, "B": 100.0, "K": 10.0}
    },
    "formulation": "log",
    "steps": [1e-4, 10.0],
    "solver": {"max_iter": 40},
    "output_prefix": "single"
  })");
  const SolveReport rep = run_single(parse_solve_config(single), dir);
  REQUIRE(rep.all_converged());

  const std::string csv = slurp(dir / "sweep.csv");
  const std::string expected_cell =
      "," + std::to_string(rep.steps[1].iterations) + ",true,";
  CHECK(csv.find(expected_cell) != std::string::npos);
}

TEST_CASE("sweep reruns are byte-identical across job counts") {
  const fs::path dir1 = temp_dir("sweep1");
  const fs::path dir2 = temp_dir("sweep2");
  const auto cfg = parse_sweep_config(sweep_config_json());
  run_sweep(cfg, dir1, 1);
  run_sweep(cfg, dir2, 2);
  CHECK(slurp(dir1 / "sweep.csv") == slurp(dir2 / "sweep.csv"));
  run_sweep(cfg, dir2, 2);
  CHECK(slurp(dir1 / "sweep.csv") == slurp(dir2 / "sweep.csv"));
}

TEST_CASE("non-convergent points carry the sentinel count, never vanish") {
  const fs::path dir = temp_dir("sentinel");
  const auto cfg = parse_sweep_config(sweep_config_json());
  run_sweep(cfg, dir, 2);
  const std::string csv = slurp(dir / "sweep.csv");
  // header + 2 formulations x 2 B x 2 f2 = 8 rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  // identity at B=100, F2/A=5 must fail within max_iter=40 -> sentinel 41
  CHECK(csv.find(",41,false,") != std::string::npos);
  CHECK(csv.find("MaxIterations") != std::string::npos);
}

TEST_CASE("single run writes report and error-series CSVs") {
  const fs::path dir = temp_dir("single");
  const json j = json::parse(R"({
    "mode": "solve",
    "problem": {
      "family": "bar1d",
      "elements": 10,
      "material": {"model": "vw", "A": 1.0, "B": 100.0, "K": 10.0}
    },
    "formulation": "log",
    "steps": [1e-4, 1.0],
    "error_series": true,
    "output_prefix": "bar"
  })");
  const SolveReport rep = run_single(parse_solve_config(j), dir);
  REQUIRE(rep.all_converged());
  CHECK(fs::exists(dir / "bar_report.csv"));
  const std::string series = slurp(dir / "bar_error_series.csv");
  CHECK(series.find("step,iter,disp_error_vs_final") == 0);
  CHECK(series.find("\n2,") != std::string::npos);
}

TEST_CASE("metrics run emits curve and region grids with 9-digit floats") {
  const fs::path dir = temp_dir("metrics");
  const json j = json::parse(R"({
    "mode": "metrics",
    "curves": [
      {"function": "exp", "params": {"A": 1.0, "B": 3.0},
       "transform": "log", "grid": {"min": 0.0, "max": 1.0, "count": 5},
       "output": "exp_curve"}
    ],
    "regions": [
      {"function": "neo_hookean_sigma", "params": {"n": 0},
       "transform": "arctan", "x": {"min": 0.3, "max": 0.9, "count": 4},
       "xn": {"min": 0.3, "max": 0.9, "count": 3},
       "sup_samples": 201, "output": "region"}
    ]
  })");
  run_metrics(parse_metrics_config(j), dir);

  const std::string curve = slurp(dir / "exp_curve.csv");
  CHECK(curve.find("x,g,dg,d2g,cbar_standard,t_g,t_dg,t_d2g,cbar_transform") ==
        0);
  // local measure of the log-transformed exponential is exactly zero
  CHECK(curve.find(",0\n") != std::string::npos);
  // 9 significant digits: B/2 = 1.5 for the raw curve
  CHECK(curve.find("1.5") != std::string::npos);

  const std::string region = slurp(dir / "region.csv");
  CHECK(region.find("x_n\\x,") == 0);
  CHECK(std::count(region.begin(), region.end(), '\n') == 4);
}

TEST_CASE("metrics reruns are byte-identical") {
  const fs::path dir1 = temp_dir("metrics1");
  const fs::path dir2 = temp_dir("metrics2");
  const json j = json::parse(R"({
    "curves": [
      {"function": "vw_uniaxial", "params": {"A": 1.0, "B": 10.0},
       "transform": "log", "grid": {"min": 1.01, "max": 1.5, "count": 50},
       "output": "curve"}
    ]
  })");
  run_metrics(parse_metrics_config(j), dir1);
  run_metrics(parse_metrics_config(j), dir2);
  CHECK(slurp(dir1 / "curve.csv") == slurp(dir2 / "curve.csv"));
}

TEST_CASE("bundled configs parse back through the harness") {
  const fs::path dir = temp_dir("seeds");
  const auto written = write_seed_configs(dir);
  CHECK(written.size() >= 10);
  int solves = 0, sweeps = 0, metrics = 0;
  for (const auto& name : written) {
    const json j = load_json_file(dir / name);
    REQUIRE(j.contains("mode"));
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "solve") {
      parse_solve_config(j);
      ++solves;
    } else if (mode == "sweep") {
      parse_sweep_config(j);
      ++sweeps;
    } else {
      parse_metrics_config(j);
      ++metrics;
    }
  }
  CHECK(solves >= 2);
  CHECK(sweeps >= 5);
  CHECK(metrics >= 2);
}
