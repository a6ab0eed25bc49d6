#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "trfem/fem.hpp"
#include "trfem/solver.hpp"

namespace trfem {

using json = nlohmann::json;

/// Mesh/material description shared by solve and sweep configs. Material
/// parameter fields hold one value per grid axis; single runs require
/// exactly one value each.
struct ProblemConfig {
  std::string family;  // bar1d | axisymmetric | cube | tube | indentation
  int elements = 10;
  int n_per_edge = 10;
  std::string direction = "tension";
  int nr = 4, nc = 40, na = 25;
  double patch_fraction = 0.04;
  std::string model;            // vw | mr
  std::vector<double> p1;       // A (vw) or mu (mr)
  std::vector<double> p2;       // B (vw) or upsilon (mr)
  std::vector<double> bulk;     // K
};

struct SolveJobConfig {
  ProblemConfig problem;
  TransformKind formulation = TransformKind::Identity;
  double beta_sq = 3.0;
  std::vector<double> steps;
  SolverConfig solver;
  bool error_series = false;
  std::string output_prefix = "solve";
};

struct SweepJobConfig {
  ProblemConfig problem;
  std::vector<TransformKind> formulations;
  std::vector<double> f1;
  std::vector<double> f2;
  SolverConfig solver;
  double beta_sq = 3.0;
  std::string output = "sweep.csv";
};

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  std::vector<double> points() const;
};

struct CurveConfig {
  std::string name;
  json params;
  TransformKind transform = TransformKind::Identity;
  double beta_sq = 3.0;
  GridSpec grid;
  std::string output;
};

struct RegionConfig {
  std::string name;
  json params;
  TransformKind transform = TransformKind::Arctan;
  double beta_sq = 3.0;
  GridSpec x;
  GridSpec xn;
  int sup_samples = 10001;
  std::string output;
};

struct MetricsJobConfig {
  std::vector<CurveConfig> curves;
  std::vector<RegionConfig> regions;
};

json load_json_file(const std::filesystem::path& file);

SolveJobConfig parse_solve_config(const json& j);
SweepJobConfig parse_sweep_config(const json& j);
MetricsJobConfig parse_metrics_config(const json& j);

/// Instantiate the problem for one concrete material point.
Problem build_problem(const ProblemConfig& pc, const MaterialParams& mat);
MaterialParams make_material(const ProblemConfig& pc, double p1, double p2,
                             double bulk);
/// Requires a single-valued material grid.
MaterialParams single_material(const ProblemConfig& pc);

/// Named scalar stress/force functions with analytic derivatives, for the
/// metrics harness.
ScalarFunction make_named_function(const std::string& name, const json& params);

}  // namespace trfem
