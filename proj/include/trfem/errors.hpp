#pragma once

#include <stdexcept>
#include <string>

namespace trfem {

/// Deformation state with det(F) <= 0 at some evaluation point.
struct NonPositiveJacobian : std::runtime_error {
  int element;
  explicit NonPositiveJacobian(const std::string& what, int element_id = -1)
      : std::runtime_error(what), element(element_id) {}
};

/// A stretch ratio that must be positive is not.
struct NegativeStretch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// First derivative too small to divide by in a nonlinearity measure.
struct VanishingDerivative : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A transformation was evaluated outside its admissible range.
struct DomainViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scaling-factor calibration refused (stretch outside (0,1) or zero force).
struct DegenerateCalibration : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Nodal averaging requested for a node with no adjacent elements.
struct IsolatedNode : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Direct factorization failed or produced non-finite results.
struct LinearSolveFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Operation requires a converged solve report.
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent harness configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace trfem
