#include "trfem/materials.hpp"

#include <cmath>

namespace trfem {

namespace {

struct IsoState {
  Tensor2 F, C, FC, B;  // B = F F^T
  Tensor2 G;            // F^{-T}
  double I1, I2, J, lnJ;
  double Jm23, Jm43;  // J^{-2/3}, J^{-4/3}
};

IsoState iso_state(const Tensor2& F, const char* who) {
  IsoState s;
  s.F = F;
  const double detF = F.determinant();
  if (!(detF > 0.0)) {
    throw NonPositiveJacobian(std::string(who) +
                              ": det(F) = " + std::to_string(detF));
  }
  s.C = F.transpose() * F;
  s.FC = F * s.C;
  s.B = F * F.transpose();
  s.G = F.inverse().transpose();
  s.I1 = s.C.trace();
  const double trC2 = (s.C * s.C).trace();
  s.I2 = 0.5 * (s.I1 * s.I1 - trC2);
  s.J = detF;
  s.lnJ = std::log(detF);
  s.Jm23 = std::pow(detF, -2.0 / 3.0);
  s.Jm43 = s.Jm23 * s.Jm23;
  return s;
}

// dIbar1/dF and dIbar2/dF for the isochoric invariants Ibar1 = J^{-2/3} I1,
// Ibar2 = J^{-4/3} I2.
Tensor2 d_ibar1(const IsoState& s) {
  return 2.0 * s.Jm23 * (s.F - (s.I1 / 3.0) * s.G);
}

Tensor2 d_ibar2(const IsoState& s) {
  return 2.0 * s.Jm43 * (s.I1 * s.F - s.FC - (2.0 / 3.0) * s.I2 * s.G);
}

// Energy derivatives with respect to (Ibar1, Ibar2): value and, for the
// exponential model, the second derivative in Ibar1.
struct IsoCoeffs {
  double s1;    // dW/dIbar1
  double ds1;   // d2W/dIbar1^2
  double s2;    // dW/dIbar2
  double bulk;  // K
};

IsoCoeffs coeffs(const IsoState& s, const VWParams& p) {
  const double e = std::exp(p.B * (s.Jm23 * s.I1 - 3.0));
  return {p.A * e, p.A * p.B * e, -0.5 * p.A, p.K};
}

IsoCoeffs coeffs(const IsoState&, const MRParams& p) {
  return {0.5 * p.mu * p.upsilon, 0.0, 0.5 * p.mu * (1.0 - p.upsilon), p.K};
}

Tensor2 pk1_from(const IsoState& s, const IsoCoeffs& c) {
  return c.s1 * d_ibar1(s) + c.s2 * d_ibar2(s) + c.bulk * s.lnJ * s.G;
}

Tangent4 tangent_from(const IsoState& s, const IsoCoeffs& c) {
  const Tensor2 H1 = d_ibar1(s);
  const Tensor2 M = s.I1 * s.F - s.FC - (2.0 / 3.0) * s.I2 * s.G;
  const Tensor2 dI2 = 2.0 * (s.I1 * s.F - s.FC);  // dI2/dF
  Tangent4 t;
  for (int i = 0; i < 3; ++i) {
    for (int J = 0; J < 3; ++J) {
      for (int k = 0; k < 3; ++k) {
        for (int L = 0; L < 3; ++L) {
          const double dik = (i == k) ? 1.0 : 0.0;
          const double dJL = (J == L) ? 1.0 : 0.0;
          const double dG = -s.G(k, J) * s.G(i, L);
          const double d1 =
              s.Jm23 * (2.0 * dik * dJL -
                        (4.0 / 3.0) * (s.G(k, L) * s.F(i, J) +
                                       s.F(k, L) * s.G(i, J)) +
                        (4.0 / 9.0) * s.I1 * s.G(i, J) * s.G(k, L) +
                        (2.0 / 3.0) * s.I1 * s.G(k, J) * s.G(i, L));
          const double dM = 2.0 * s.F(k, L) * s.F(i, J) + s.I1 * dik * dJL -
                            dik * s.C(L, J) - s.F(i, L) * s.F(k, J) -
                            s.B(i, k) * dJL -
                            (2.0 / 3.0) * (dI2(k, L) * s.G(i, J) +
                                           s.I2 * dG);
          const double d2 =
              2.0 * (-(4.0 / 3.0) * s.Jm43 * s.G(k, L) * M(i, J) +
                     s.Jm43 * dM);
          t(i, J, k, L) = c.ds1 * H1(i, J) * H1(k, L) + c.s1 * d1 +
                          c.s2 * d2 + c.bulk * s.G(i, J) * s.G(k, L) +
                          c.bulk * s.lnJ * dG;
        }
      }
    }
  }
  return t;
}

void require_positive_stretch(double lambda, const char* who) {
  if (!(lambda > 0.0)) {
    throw NegativeStretch(std::string(who) +
                          ": lambda = " + std::to_string(lambda));
  }
}

}  // namespace

double vw_energy(const Tensor2& F, const VWParams& p) {
  const IsoState s = iso_state(F, "vw_energy");
  const double x1 = s.Jm23 * s.I1 - 3.0;
  const double x2 = s.Jm43 * s.I2 - 3.0;
  // (A/B)(e^{Bx} - 1) -> A x as B -> 0; expm1 keeps the small-B branch exact.
  const double expo = (p.B == 0.0) ? p.A * x1 : (p.A / p.B) * std::expm1(p.B * x1);
  return expo - 0.5 * p.A * x2 + 0.5 * p.K * s.lnJ * s.lnJ;
}

double mr_energy(const Tensor2& F, const MRParams& p) {
  const IsoState s = iso_state(F, "mr_energy");
  const double x1 = s.Jm23 * s.I1 - 3.0;
  const double x2 = s.Jm43 * s.I2 - 3.0;
  return 0.5 * p.mu * (p.upsilon * x1 + (1.0 - p.upsilon) * x2) +
         0.5 * p.K * s.lnJ * s.lnJ;
}

double vw_uniaxial_P(double lambda, const VWParams& p) {
  require_positive_stretch(lambda, "vw_uniaxial_P");
  const double l = lambda;
  const double q = l * l + 2.0 / l - 3.0;
  return 2.0 * p.A * (l - 1.0 / (l * l)) * std::exp(p.B * q) -
         p.A * (1.0 - 1.0 / (l * l * l));
}

double vw_uniaxial_dP(double lambda, const VWParams& p) {
  require_positive_stretch(lambda, "vw_uniaxial_dP");
  const double l = lambda;
  const double q = l * l + 2.0 / l - 3.0;
  const double dq = 2.0 * l - 2.0 / (l * l);
  const double e = std::exp(p.B * q);
  return 2.0 * p.A * (1.0 + 2.0 / (l * l * l)) * e +
         2.0 * p.A * (l - 1.0 / (l * l)) * p.B * dq * e -
         3.0 * p.A / (l * l * l * l);
}

double mr_uniaxial_P(double lambda, const MRParams& p) {
  require_positive_stretch(lambda, "mr_uniaxial_P");
  const double l = lambda;
  return p.mu * (p.upsilon * (l - 1.0 / (l * l)) +
                 (1.0 - p.upsilon) * (1.0 - 1.0 / (l * l * l)));
}

double mr_uniaxial_dP(double lambda, const MRParams& p) {
  require_positive_stretch(lambda, "mr_uniaxial_dP");
  const double l = lambda;
  return p.mu * (p.upsilon * (1.0 + 2.0 / (l * l * l)) +
                 (1.0 - p.upsilon) * 3.0 / (l * l * l * l));
}

double neo_hookean_sigma_n(double lambda, StressMeasure n) {
  require_positive_stretch(lambda, "neo_hookean_sigma_n");
  const double l = lambda;
  return std::pow(l, -static_cast<double>(n)) * (l * l - 1.0 / l);
}

Tensor2 pk1_stress(const Tensor2& F, const MaterialParams& m) {
  return std::visit(
      [&](const auto& p) {
        const IsoState s = iso_state(F, "pk1_stress");
        return pk1_from(s, coeffs(s, p));
      },
      m);
}

Tangent4 material_tangent(const Tensor2& F, const MaterialParams& m) {
  return std::visit(
      [&](const auto& p) {
        const IsoState s = iso_state(F, "material_tangent");
        return tangent_from(s, coeffs(s, p));
      },
      m);
}

double strain_energy(const Tensor2& F, const MaterialParams& m) {
  return std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, VWParams>) {
          return vw_energy(F, p);
        } else {
          return mr_energy(F, p);
        }
      },
      m);
}

double uniaxial_P(double lambda, const MaterialParams& m) {
  return std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, VWParams>) {
          return vw_uniaxial_P(lambda, p);
        } else {
          return mr_uniaxial_P(lambda, p);
        }
      },
      m);
}

double uniaxial_dP(double lambda, const MaterialParams& m) {
  return std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, VWParams>) {
          return vw_uniaxial_dP(lambda, p);
        } else {
          return mr_uniaxial_dP(lambda, p);
        }
      },
      m);
}

double bulk_modulus(const MaterialParams& m) {
  return std::visit([](const auto& p) { return p.K; }, m);
}

}  // namespace trfem
