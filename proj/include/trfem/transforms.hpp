#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "trfem/errors.hpp"

namespace trfem {

/// Residual transformation applied before linearization.
enum class TransformKind { Identity, Log, Arctan };

std::string to_string(TransformKind k);
TransformKind transform_from_string(const std::string& s);

/// Internal/external force at one DOF, evaluated at the current iterate.
struct ResidualPair {
  double f_int;
  double f_ext;
};

/// Per-DOF transformation state for one solve context. `kind` and `alpha`
/// are sized to the free DOFs; alpha entries are NaN until calibrated.
struct TransformSpec {
  std::vector<TransformKind> kind;
  double tol = 0.0;
  double beta_sq = 3.0;
  std::vector<double> alpha;

  static TransformSpec uniform(TransformKind k, int n_dofs,
                               std::span<const int> traction_dofs);

  bool has_alpha(int dof) const {
    const double a = alpha[static_cast<std::size_t>(dof)];
    return std::isfinite(a) && a > 0.0;
  }
};

/// Trigger for the log branch: both forces above tolerance and of the
/// same sign.
bool log_condition(const ResidualPair& r, double tol);

/// f_int * log(f_ext / f_int). Requires log_condition; throws
/// DomainViolation otherwise.
double log_residual(const ResidualPair& r);

/// alpha = |tan(pi/2 (1 - lambda)) / f_int| for a compressive nodal
/// stretch lambda in (1e-3, 1 - 1e-6). Throws DegenerateCalibration
/// outside that range or for f_int = 0.
double calibrate_alpha(double f_int, double lambda_node);

/// Trigger for the arctan branch: external force above tolerance and an
/// alpha available from a previous iteration.
bool arctan_condition(const ResidualPair& r, const TransformSpec& spec,
                      int dof);

/// (1 + (alpha f_int)^2)/alpha * (atan(alpha f_ext) - atan(alpha f_int)).
/// Equals (T(f_ext) - T(f_int))/T'(f_int) for T = atan(alpha .).
double arctan_residual(const ResidualPair& r, double alpha);

/// Dispatch: active transformation's residual when its condition holds,
/// standard residual f_ext - f_int otherwise. Total for finite inputs.
double modified_residual(const ResidualPair& r, const TransformSpec& spec,
                         int dof);

/// Arithmetic mean of Gauss-point stretches from the elements containing
/// a node. Throws IsolatedNode for an empty list.
double nodal_stretch(std::span<const double> element_stretches);

}  // namespace trfem
