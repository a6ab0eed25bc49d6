#pragma once

#include <array>
#include <variant>

#include "trfem/kinematics.hpp"

namespace trfem {

/// Veronda-Westmann parameters. A: initial shear modulus (stress units),
/// B: dimensionless exponent, K: bulk modulus.
struct VWParams {
  double A;
  double B;
  double K;
};

/// Compressible Mooney-Rivlin parameters. mu: effective shear modulus,
/// upsilon in [0,1] blends the two isochoric terms (upsilon = 1 is
/// neo-Hookean), K: bulk modulus.
struct MRParams {
  double mu;
  double upsilon;
  double K;
};

using MaterialParams = std::variant<VWParams, MRParams>;

/// Stress measure selector: lambda^{-n} weighting with n = 0, 1, 2 for
/// Cauchy, 1st PK and 2nd PK respectively.
enum class StressMeasure : int { Cauchy = 0, FirstPK = 1, SecondPK = 2 };

/// Fourth-order tangent dP/dF, indexed (i,J,k,L) row-major.
struct Tangent4 {
  std::array<double, 81> v{};
  double& operator()(int i, int J, int k, int L) {
    return v[static_cast<std::size_t>(((i * 3 + J) * 3 + k) * 3 + L)];
  }
  double operator()(int i, int J, int k, int L) const {
    return v[static_cast<std::size_t>(((i * 3 + J) * 3 + k) * 3 + L)];
  }
};

double vw_energy(const Tensor2& F, const VWParams& p);
double mr_energy(const Tensor2& F, const MRParams& p);

/// Closed-form uniaxial first PK stress under the incompressibility
/// constraint (F = diag(lambda, 1/sqrt(lambda), 1/sqrt(lambda)), J = 1).
/// Equal to d/dlambda of the isochoric energy restricted to that path;
/// the volumetric reaction does no work along it, so no pressure term
/// appears. Throws NegativeStretch for lambda <= 0.
double vw_uniaxial_P(double lambda, const VWParams& p);
double mr_uniaxial_P(double lambda, const MRParams& p);

/// Derivatives of the uniaxial closed forms (element stiffness of the 1D
/// incompressible family).
double vw_uniaxial_dP(double lambda, const VWParams& p);
double mr_uniaxial_dP(double lambda, const MRParams& p);

/// Uniaxial incompressible stress family lambda^{-n} (lambda^2 - 1/lambda)
/// of a unit-shear-modulus neo-Hookean solid.
double neo_hookean_sigma_n(double lambda, StressMeasure n);

/// First Piola-Kirchhoff stress P = dW/dF (analytic).
Tensor2 pk1_stress(const Tensor2& F, const MaterialParams& m);

/// Consistent tangent dP/dF (analytic; pinned against finite differences
/// of pk1_stress in the test suite).
Tangent4 material_tangent(const Tensor2& F, const MaterialParams& m);

/// Energy density for either model.
double strain_energy(const Tensor2& F, const MaterialParams& m);

/// Uniaxial-incompressible closed forms for either model.
double uniaxial_P(double lambda, const MaterialParams& m);
double uniaxial_dP(double lambda, const MaterialParams& m);

/// Bulk modulus of either model.
double bulk_modulus(const MaterialParams& m);

}  // namespace trfem
