#include "trfem/solver.hpp"

#include <Eigen/SparseLU>
#include <cmath>

#include "trfem/csv.hpp"

namespace trfem {

std::string to_string(Termination t) {
  switch (t) {
    case Termination::Converged: return "Converged";
    case Termination::MaxIterations: return "MaxIterations";
    case Termination::NonPositiveJacobian: return "NonPositiveJacobian";
    case Termination::NegativeStretch: return "NegativeStretch";
    case Termination::LinearSolveFailure: return "LinearSolveFailure";
  }
  return "MaxIterations";
}

namespace {

using SparseLU = Eigen::SparseLU<Eigen::SparseMatrix<double>>;

bool matrix_finite(const Eigen::SparseMatrix<double>& K) {
  const double* v = K.valuePtr();
  for (Eigen::Index i = 0; i < K.nonZeros(); ++i) {
    if (!std::isfinite(v[i])) return false;
  }
  return true;
}

void refresh_alpha(const Problem& problem, const AssembledSystem& sys,
                   TransformSpec& spec) {
  bool any_arctan = false;
  for (int d : problem.traction_dofs) {
    if (spec.kind[static_cast<std::size_t>(d)] == TransformKind::Arctan) {
      any_arctan = true;
      break;
    }
  }
  if (!any_arctan) return;
  const auto means = element_mean_stretches(problem, sys);
  for (int d : problem.traction_dofs) {
    if (spec.kind[static_cast<std::size_t>(d)] != TransformKind::Arctan)
      continue;
    const int node = problem.free_dof_node[static_cast<std::size_t>(d)];
    try {
      spec.alpha[static_cast<std::size_t>(d)] =
          calibrate_alpha(sys.f_int[d], nodal_stretch_at(problem, means, node));
    } catch (const DegenerateCalibration&) {
      spec.alpha[static_cast<std::size_t>(d)] =
          std::numeric_limits<double>::quiet_NaN();
    }
  }
}

NewtonStepResult newton_step_impl(const Problem& problem,
                                  const Eigen::VectorXd& u, double load,
                                  TransformSpec& spec, SparseLU& lu,
                                  bool& analyzed) {
  AssembledSystem sys = assemble(problem, u, load);
  refresh_alpha(problem, sys, spec);
  Eigen::VectorXd R(problem.n_free);
  for (int d = 0; d < problem.n_free; ++d) {
    R[d] = modified_residual({sys.f_int[d], sys.f_ext[d]}, spec, d);
  }
  if (!R.allFinite() || !matrix_finite(sys.K)) {
    throw LinearSolveFailure("non-finite residual or stiffness");
  }
  if (!analyzed) {
    lu.analyzePattern(sys.K);
    analyzed = true;
  }
  lu.factorize(sys.K);
  if (lu.info() != Eigen::Success) {
    throw LinearSolveFailure("sparse factorization failed");
  }
  const Eigen::VectorXd du = lu.solve(R);
  if (!du.allFinite()) {
    throw LinearSolveFailure("non-finite Newton increment");
  }
  return NewtonStepResult{u + du, du.norm()};
}

std::vector<int> subset_dofs(const Problem& problem,
                             std::span<const int> subset_nodes) {
  std::vector<int> dofs;
  if (subset_nodes.empty()) {
    std::vector<bool> seen(static_cast<std::size_t>(problem.n_nodes()), false);
    for (int d : problem.traction_dofs) {
      seen[static_cast<std::size_t>(
          problem.free_dof_node[static_cast<std::size_t>(d)])] = true;
    }
    for (int n = 0; n < problem.n_nodes(); ++n) {
      if (!seen[static_cast<std::size_t>(n)]) continue;
      for (int c = 0; c < problem.dofs_per_node; ++c) {
        const int d = problem.dof(n, c);
        if (d >= 0) dofs.push_back(d);
      }
    }
  } else {
    for (int n : subset_nodes) {
      for (int c = 0; c < problem.dofs_per_node; ++c) {
        const int d = problem.dof(n, c);
        if (d >= 0) dofs.push_back(d);
      }
    }
  }
  return dofs;
}

std::vector<double> error_series_on(const StepReport& step,
                                    const Eigen::VectorXd& reference,
                                    const std::vector<int>& dofs) {
  double ref_norm = 0.0;
  for (int d : dofs) ref_norm += reference[d] * reference[d];
  ref_norm = std::sqrt(ref_norm);
  std::vector<double> series;
  series.reserve(step.iterates.size());
  for (const auto& it : step.iterates) {
    double err = 0.0;
    for (int d : dofs) {
      const double diff = it[d] - reference[d];
      err += diff * diff;
    }
    err = std::sqrt(err);
    series.push_back(ref_norm > 0.0 ? err / ref_norm : err);
  }
  return series;
}

}  // namespace

NewtonStepResult newton_step(const Problem& problem, const Eigen::VectorXd& u,
                             double load, TransformSpec& spec) {
  SparseLU lu;
  bool analyzed = false;
  return newton_step_impl(problem, u, load, spec, lu, analyzed);
}

SolveReport solve(const Problem& problem, const LoadSchedule& schedule,
                  const SolverConfig& config) {
  SolveReport report;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(problem.n_free);
  SparseLU lu;
  bool analyzed = false;
  const std::vector<int> err_dofs =
      subset_dofs(problem, config.error_subset_nodes);

  for (std::size_t s = 0; s < schedule.steps.size(); ++s) {
    const double load = schedule.steps[s];
    const bool standard = (s == 0 && schedule.first_step_standard);
    TransformSpec spec = TransformSpec::uniform(
        standard ? TransformKind::Identity : config.transform, problem.n_free,
        problem.traction_dofs);
    spec.beta_sq = config.beta_sq;
    spec.tol =
        1e-10 * std::max(1.0, (load * problem.load_pattern)
                                  .lpNorm<Eigen::Infinity>());
    StepReport step;
    step.load = load;
    for (int it = 1; it <= config.max_iter; ++it) {
      NewtonStepResult res;
      try {
        res = newton_step_impl(problem, u, load, spec, lu, analyzed);
      } catch (const NonPositiveJacobian&) {
        step.termination = Termination::NonPositiveJacobian;
        break;
      } catch (const NegativeStretch&) {
        step.termination = Termination::NegativeStretch;
        break;
      } catch (const LinearSolveFailure&) {
        step.termination = Termination::LinearSolveFailure;
        break;
      }
      u = res.u_next;
      step.iterations = it;
      const double u_norm = u.norm();
      const double rel =
          u_norm < 1e-14 ? res.step_norm : res.step_norm / u_norm;
      step.rel_increments.push_back(rel);
      step.iterates.push_back(u);
      if (rel < config.disp_tol) {
        step.converged = true;
        step.termination = Termination::Converged;
        break;
      }
      if (it == config.max_iter) {
        step.termination = Termination::MaxIterations;
      }
    }
    if (step.converged) {
      step.error_vs_final = error_series_on(step, u, err_dofs);
      try {
        const AssembledSystem sys = assemble(problem, u, load);
        const double fe = sys.f_ext.norm();
        step.final_force_residual_rel =
            fe > 0.0 ? (sys.f_ext - sys.f_int).norm() / fe
                     : (sys.f_ext - sys.f_int).norm();
      } catch (const std::runtime_error&) {
        // converged state not re-assemblable; leave the ratio NaN
      }
    }
    report.steps.push_back(std::move(step));
    if (!report.steps.back().converged) break;
  }
  report.final_u = u;
  return report;
}

std::vector<double> displacement_error_series(
    const Problem& problem, const StepReport& step,
    const Eigen::VectorXd& reference, std::span<const int> subset_nodes) {
  if (!step.converged) {
    throw NotConverged("displacement_error_series: step did not converge");
  }
  return error_series_on(step, reference, subset_dofs(problem, subset_nodes));
}

void write_report_csv(const SolveReport& report, std::ostream& os) {
  os << "step,iter,rel_disp_increment,disp_error_vs_final\n";
  for (std::size_t s = 0; s < report.steps.size(); ++s) {
    const StepReport& step = report.steps[s];
    for (int i = 0; i < step.iterations; ++i) {
      os << (s + 1) << ',' << (i + 1) << ','
         << csv_num(step.rel_increments[static_cast<std::size_t>(i)]) << ',';
      if (static_cast<std::size_t>(i) < step.error_vs_final.size()) {
        os << csv_num(step.error_vs_final[static_cast<std::size_t>(i)]);
      } else {
        os << "nan";
      }
      os << '\n';
    }
  }
  os << "step,converged,iterations,termination\n";
  for (std::size_t s = 0; s < report.steps.size(); ++s) {
    const StepReport& step = report.steps[s];
    os << (s + 1) << ',' << (step.converged ? "true" : "false") << ','
       << step.iterations << ',' << to_string(step.termination) << '\n';
  }
}

ScalarSolveReport solve_scalar(const ScalarFunction& g, double target,
                               double x0, TransformKind kind,
                               const ScalarNewtonOptions& opts) {
  ScalarSolveReport rep;
  rep.x = x0;
  const double tol_conv = opts.rtol * std::max(1.0, std::abs(target));
  const double tol_trigger = 1e-10 * std::max(1.0, std::abs(target));
  TransformSpec spec = TransformSpec::uniform(kind, 1, std::array{0});
  spec.tol = tol_trigger;
  if (std::isfinite(opts.alpha) && opts.alpha > 0.0) spec.alpha[0] = opts.alpha;
  while (rep.iterations < opts.max_iter) {
    const double f = g.f(rep.x);
    const double r_std = target - f;
    rep.residual_history.push_back(r_std);
    if (std::abs(r_std) <= tol_conv) {
      rep.converged = true;
      return rep;
    }
    const double df = g.df(rep.x);
    const double r = modified_residual({f, target}, spec, 0);
    const double dx = r / df;
    if (!std::isfinite(dx)) return rep;
    rep.x += dx;
    ++rep.iterations;
  }
  const double f = g.f(rep.x);
  rep.converged = std::abs(target - f) <= tol_conv;
  return rep;
}

}  // namespace trfem
