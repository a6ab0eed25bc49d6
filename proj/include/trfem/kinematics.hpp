#pragma once

#include <Eigen/Dense>

#include "trfem/errors.hpp"

namespace trfem {

/// 3x3 second-order tensor. Houses F, C, E, stress measures.
using Tensor2 = Eigen::Matrix3d;
using Vector3 = Eigen::Vector3d;

/// First three isotropic invariants of C = F^T F.
struct Invariants {
  double I1;  ///< tr(C)
  double I2;  ///< (tr^2(C) - tr(C^2)) / 2
  double J;   ///< volume ratio, sqrt(det C) = det F for admissible F
};

/// F = I + grad_u.
Tensor2 deformation_gradient(const Tensor2& grad_u);

/// Invariants of C = F^T F. Throws NonPositiveJacobian if det(F) <= 0.
Invariants invariants(const Tensor2& F);

/// Stretch along unit direction N: sqrt(N . C N). Throws NegativeStretch
/// if the quadratic form is non-positive.
double stretch_along(const Tensor2& C, const Vector3& N);

}  // namespace trfem
