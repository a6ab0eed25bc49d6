#pragma once

#include <filesystem>

#include "trfem/config.hpp"

namespace trfem {

/// Executes one solve and writes <prefix>_report.csv (plus
/// <prefix>_error_series.csv when requested) into out_dir.
SolveReport run_single(const SolveJobConfig& cfg,
                       const std::filesystem::path& out_dir);
SolveReport run_single(const std::filesystem::path& config_file,
                       const std::filesystem::path& out_dir);

/// Executes the grid of (formulation, material, F1, F2) points on a worker
/// pool and writes one CSV (rows in grid order regardless of completion
/// order). Non-convergence is reported with the sentinel iteration count
/// max_iter + 1, never an absent row.
void run_sweep(const SweepJobConfig& cfg, const std::filesystem::path& out_dir,
               int jobs);
void run_sweep(const std::filesystem::path& config_file,
               const std::filesystem::path& out_dir, int jobs);

/// Emits stress/transformed-stress curve CSVs and comparison-region
/// matrices.
void run_metrics(const MetricsJobConfig& cfg,
                 const std::filesystem::path& out_dir);
void run_metrics(const std::filesystem::path& config_file,
                 const std::filesystem::path& out_dir);

/// Writes the bundled study configurations into out_dir and returns the
/// file names written.
std::vector<std::string> write_seed_configs(
    const std::filesystem::path& out_dir);

}  // namespace trfem
