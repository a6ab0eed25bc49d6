#include <fstream>

#include "trfem/harness.hpp"

namespace trfem {

namespace {

struct SeedConfig {
  const char* name;
  const char* text;
};

// Bundled study configurations: uniaxial convergence sweeps for both
// constitutive families, the two practical problems, and the nonlinearity
// metrics grids.
const SeedConfig kSeeds[] = {
    {"bar_vw_log.json", R"({
  "mode": "sweep",
  "problem": {
    "family": "bar1d",
    "elements": 10,
    "material": {"model": "vw", "A": 1.0, "B": [1, 10, 100], "K": 10.0}
  },
  "formulations": ["identity", "log"],
  "f1": [1e-4],
  "f2": {"log10_min": -1, "log10_max": 2, "per_decade": 20},
  "output": "bar_vw_log.csv"
})"},
    {"axisym_vw_log.json", R"({
  "mode": "sweep",
  "problem": {
    "family": "axisymmetric",
    "elements": 10,
    "material": {"model": "vw", "A": 1.0, "B": [1, 10, 100], "K": [2.0, 10.0, 100.0]}
  },
  "formulations": ["identity", "log"],
  "f1": [1e-4],
  "f2": {"log10_min": -2, "log10_max": 2, "per_decade": 20},
  "output": "axisym_vw_log.csv"
})"},
    {"cube_vw_log.json", R"({
  "mode": "sweep",
  "problem": {
    "family": "cube",
    "n_per_edge": 10,
    "direction": "tension",
    "material": {"model": "vw", "A": 1.0, "B": [1, 10, 100], "K": 10.0}
  },
  "formulations": ["identity", "log"],
  "f1": [1e-4],
  "f2": {"log10_min": -2, "log10_max": 1, "per_decade": 10},
  "output": "cube_vw_log.csv"
})"},
    {"bar_mr_arctan.json", R"({
  "mode": "sweep",
  "problem": {
    "family": "bar1d",
    "elements": 10,
    "material": {"model": "mr", "mu": 1.0, "upsilon": [0.0, 0.5, 1.0], "K": 10.0}
  },
  "formulations": ["identity", "arctan"],
  "f1": [-1e-4],
  "f2": [-0.1, -0.2, -0.5, -1, -2, -3, -5, -10, -20, -50, -100],
  "output": "bar_mr_arctan.csv"
})"},
    {"axisym_mr_arctan.json", R"({
  "mode": "sweep",
  "problem": {
    "family": "axisymmetric",
    "elements": 10,
    "material": {"model": "mr", "mu": 1.0, "upsilon": [0.0, 0.5, 1.0], "K": 10.0}
  },
  "formulations": ["identity", "arctan"],
  "f1": [-1e-4],
  "f2": [-0.1, -0.2, -0.5, -1, -2, -3, -5, -10, -15, -20],
  "output": "axisym_mr_arctan.csv"
})"},
    {"cube_mr_arctan.json", R"({
  "mode": "sweep",
  "problem": {
    "family": "cube",
    "n_per_edge": 10,
    "direction": "compression",
    "material": {"model": "mr", "mu": 1.0, "upsilon": [0.0, 0.5, 1.0], "K": 10.0}
  },
  "formulations": ["identity", "arctan"],
  "f1": [1e-4],
  "f2": [0.1, 0.2, 0.5, 1, 2, 3, 5, 10, 15, 20],
  "output": "cube_mr_arctan.csv"
})"},
    {"cube_mr_log_compression.json", R"({
  "mode": "sweep",
  "problem": {
    "family": "cube",
    "n_per_edge": 10,
    "direction": "compression",
    "material": {"model": "mr", "mu": 1.0, "upsilon": [0.0, 0.5, 1.0], "K": 10.0}
  },
  "formulations": ["log"],
  "f1": [1e-4],
  "f2": [0.1, 0.2, 0.5, 1, 2, 3, 5, 10, 15, 20],
  "output": "cube_mr_log_compression.csv"
})"},
    {"tube_pressurization.json", R"({
  "mode": "solve",
  "problem": {
    "family": "tube",
    "nr": 4, "nc": 40, "na": 25,
    "material": {"model": "vw", "A": 0.5, "B": 50.0, "K": 10.0}
  },
  "formulation": "log",
  "steps": [2e-5, 0.2],
  "error_series": true,
  "output_prefix": "tube_log"
})"},
    {"indentation.json", R"({
  "mode": "solve",
  "problem": {
    "family": "indentation",
    "n_per_edge": 10,
    "patch_fraction": 0.04,
    "material": {"model": "mr", "mu": 0.2, "upsilon": 1.0, "K": 1.0}
  },
  "formulation": "arctan",
  "steps": [3.6e-4, 3.6],
  "error_series": true,
  "output_prefix": "indentation_arctan"
})"},
    {"stress_metrics.json", R"({
  "mode": "metrics",
  "curves": [
    {"function": "vw_uniaxial", "params": {"A": 1.0, "B": 1.0}, "transform": "log",
     "grid": {"min": 1.001, "max": 1.8, "count": 400}, "output": "vw_b1_log"},
    {"function": "vw_uniaxial", "params": {"A": 1.0, "B": 10.0}, "transform": "log",
     "grid": {"min": 1.001, "max": 1.8, "count": 400}, "output": "vw_b10_log"},
    {"function": "vw_uniaxial", "params": {"A": 1.0, "B": 100.0}, "transform": "log",
     "grid": {"min": 1.001, "max": 1.5, "count": 400}, "output": "vw_b100_log"},
    {"function": "neo_hookean_sigma", "params": {"n": 0}, "transform": "arctan",
     "grid": {"min": 0.05, "max": 0.995, "count": 400}, "output": "nh_cauchy_arctan"},
    {"function": "neo_hookean_sigma", "params": {"n": 1}, "transform": "arctan",
     "grid": {"min": 0.05, "max": 0.995, "count": 400}, "output": "nh_pk1_arctan"},
    {"function": "neo_hookean_sigma", "params": {"n": 2}, "transform": "arctan",
     "grid": {"min": 0.05, "max": 0.995, "count": 400}, "output": "nh_pk2_arctan"},
    {"function": "mr_uniaxial", "params": {"mu": 1.0, "upsilon": 0.0}, "transform": "arctan",
     "grid": {"min": 0.2, "max": 0.995, "count": 400}, "output": "mr_u0_arctan"},
    {"function": "mr_uniaxial", "params": {"mu": 1.0, "upsilon": 0.5}, "transform": "arctan",
     "grid": {"min": 0.2, "max": 0.995, "count": 400}, "output": "mr_u05_arctan"},
    {"function": "mr_uniaxial", "params": {"mu": 1.0, "upsilon": 1.0}, "transform": "arctan",
     "grid": {"min": 0.2, "max": 0.995, "count": 400}, "output": "mr_u1_arctan"}
  ]
})"},
    {"compression_region.json", R"({
  "mode": "metrics",
  "regions": [
    {"function": "neo_hookean_sigma", "params": {"n": 0}, "transform": "arctan",
     "beta_sq": 3.0,
     "x": {"min": 0.05, "max": 0.98, "count": 41},
     "xn": {"min": 0.05, "max": 0.98, "count": 41},
     "sup_samples": 2001, "output": "region_nh_arctan"}
  ]
})"},
};

}  // namespace

std::vector<std::string> write_seed_configs(
    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> written;
  for (const auto& seed : kSeeds) {
    const auto path = out_dir / seed.name;
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write " + path.string());
    os << seed.text << '\n';
    written.push_back(seed.name);
  }
  return written;
}

}  // namespace trfem
