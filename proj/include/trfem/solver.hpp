#pragma once

#include <optional>
#include <ostream>

#include "trfem/fem.hpp"
#include "trfem/metrics.hpp"
#include "trfem/transforms.hpp"

namespace trfem {

/// Ordered load magnitudes. The first step is always solved with the
/// standard formulation so that internal forces and scaling factors exist
/// before a transformation is applied.
struct LoadSchedule {
  std::vector<double> steps;
  bool first_step_standard = true;
};

struct SolverConfig {
  double disp_tol = 1e-3;
  int max_iter = 100;
  TransformKind transform = TransformKind::Identity;
  double beta_sq = 3.0;
  /// Nodes for the displacement-error series; empty selects the
  /// traction-boundary nodes.
  std::vector<int> error_subset_nodes;
};

enum class Termination {
  Converged,
  MaxIterations,
  NonPositiveJacobian,
  NegativeStretch,
  LinearSolveFailure
};

std::string to_string(Termination t);

struct StepReport {
  double load = 0.0;
  int iterations = 0;
  bool converged = false;
  Termination termination = Termination::MaxIterations;
  std::vector<double> rel_increments;         // |dU| / |U_k| per iteration
  std::vector<double> error_vs_final;         // vs final iterate, subset norm
  std::vector<Eigen::VectorXd> iterates;      // displacement after each iteration
  /// |f_ext - f_int| / |f_ext| evaluated at the converged state (NaN when
  /// the step did not converge).
  double final_force_residual_rel = std::numeric_limits<double>::quiet_NaN();
};

struct SolveReport {
  std::vector<StepReport> steps;
  Eigen::VectorXd final_u;
  bool all_converged() const {
    if (steps.empty()) return false;
    for (const auto& s : steps)
      if (!s.converged) return false;
    return true;
  }
  const StepReport& last_step() const { return steps.back(); }
};

struct NewtonStepResult {
  Eigen::VectorXd u_next;
  double step_norm;
};

/// One full Newton update u + K^{-1} R(u) with the transformed residual
/// active on the spec's DOFs (scaling factors are recalibrated from the
/// current iterate before the residual is formed). Throws on assembly or
/// factorization failure.
NewtonStepResult newton_step(const Problem& problem, const Eigen::VectorXd& u,
                             double load, TransformSpec& spec);

/// Load-stepped Newton solve. Step 1 uses the standard formulation; later
/// steps use config.transform at the traction DOFs. Failures are encoded
/// in the report, never thrown.
SolveReport solve(const Problem& problem, const LoadSchedule& schedule,
                  const SolverConfig& config);

/// Per-iteration L2 relative displacement error of a converged step against
/// a reference displacement, over a node subset (empty = traction nodes).
/// Throws NotConverged otherwise.
std::vector<double> displacement_error_series(
    const Problem& problem, const StepReport& step,
    const Eigen::VectorXd& reference,
    std::span<const int> subset_nodes = {});

/// CSV serialization: one row per iteration, then one summary row per step.
void write_report_csv(const SolveReport& report, std::ostream& os);

/// Scalar Newton driver for equations g(x) = target with an optional
/// residual transformation. Convergence is residual-based:
/// |target - g(x)| <= rtol * max(1, |target|).
struct ScalarNewtonOptions {
  double rtol = 1e-9;
  int max_iter = 100;
  /// Fixed scaling factor for the arctan branch.
  double alpha = std::numeric_limits<double>::quiet_NaN();
};

struct ScalarSolveReport {
  double x = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
};

ScalarSolveReport solve_scalar(const ScalarFunction& g, double target,
                               double x0, TransformKind kind,
                               const ScalarNewtonOptions& opts = {});

}  // namespace trfem
