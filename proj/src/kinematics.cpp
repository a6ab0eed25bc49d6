#include "trfem/kinematics.hpp"

#include <cmath>

namespace trfem {

Tensor2 deformation_gradient(const Tensor2& grad_u) {
  return Tensor2::Identity() + grad_u;
}

Invariants invariants(const Tensor2& F) {
  const double detF = F.determinant();
  if (!(detF > 0.0)) {
    throw NonPositiveJacobian("invariants: det(F) = " + std::to_string(detF));
  }
  const Tensor2 C = F.transpose() * F;
  const double trC = C.trace();
  const double trC2 = (C * C).trace();
  return Invariants{trC, 0.5 * (trC * trC - trC2), detF};
}

double stretch_along(const Tensor2& C, const Vector3& N) {
  const double q = N.dot(C * N);
  if (!(q > 0.0)) {
    throw NegativeStretch("stretch_along: N.CN = " + std::to_string(q));
  }
  return std::sqrt(q);
}

}  // namespace trfem
