#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "trfem/harness.hpp"

namespace {

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("TRFEM_OUT_DIR")) {
    return env;
  }
  return ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlinear finite-element solver with transformed-residual "
               "Newton formulations"};
  app.require_subcommand(0, 1);

  std::string out_dir = default_out_dir().string();
  app.add_option("--out", out_dir, "Output directory")
      ->envname("TRFEM_OUT_DIR");
  bool seed_figures = false;
  app.add_flag("--seed-figures", seed_figures,
               "Write the bundled study configurations into the output "
               "directory and exit");

  std::string solve_config, sweep_config, metrics_config, dump_mesh_path;
  auto* solve_cmd =
      app.add_subcommand("solve", "Run one load-stepped solve from a config");
  solve_cmd->add_option("config", solve_config, "JSON config file")
      ->required();
  solve_cmd->add_option("--dump-mesh", dump_mesh_path,
                        "Write a plain-text node/element listing to a file");

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Run a convergence-study grid from a config");
  sweep_cmd->add_option("config", sweep_config, "JSON config file")
      ->required();
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  sweep_cmd->add_option("--jobs", jobs, "Worker threads for grid points");

  auto* metrics_cmd = app.add_subcommand(
      "metrics", "Emit nonlinearity-measure CSV grids from a config");
  metrics_cmd->add_option("config", metrics_config, "JSON config file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (seed_figures) {
      const auto written = trfem::write_seed_configs(out_dir);
      for (const auto& name : written) {
        std::cout << "wrote " << (std::filesystem::path(out_dir) / name).string()
                  << "\n";
      }
      return 0;
    }
    if (solve_cmd->parsed()) {
      const auto cfg =
          trfem::parse_solve_config(trfem::load_json_file(solve_config));
      if (!dump_mesh_path.empty()) {
        const trfem::Problem problem = trfem::build_problem(
            cfg.problem, trfem::single_material(cfg.problem));
        std::ofstream os(dump_mesh_path);
        if (!os) {
          throw trfem::ConfigError("cannot write " + dump_mesh_path);
        }
        trfem::dump_mesh(problem, os);
      }
      const trfem::SolveReport rep = trfem::run_single(cfg, out_dir);
      for (std::size_t s = 0; s < rep.steps.size(); ++s) {
        const auto& step = rep.steps[s];
        std::cout << "step " << (s + 1) << ": load " << step.load << ", "
                  << step.iterations << " iterations, "
                  << trfem::to_string(step.termination) << "\n";
      }
      if (!rep.all_converged()) {
        std::cout << "solve did not converge (see report CSV)\n";
      }
      return 0;
    }
    if (sweep_cmd->parsed()) {
      trfem::run_sweep(std::filesystem::path(sweep_config), out_dir, jobs);
      return 0;
    }
    if (metrics_cmd->parsed()) {
      trfem::run_metrics(std::filesystem::path(metrics_config), out_dir);
      return 0;
    }
    std::cout << app.help() << "\n";
    return 0;
  } catch (const trfem::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
