#include <doctest.h>

#include <random>

#include "trfem/materials.hpp"

using namespace trfem;

namespace {

Tensor2 uniaxial_incompressible(double lambda) {
  Tensor2 F = Tensor2::Zero();
  F(0, 0) = lambda;
  F(1, 1) = 1.0 / std::sqrt(lambda);
  F(2, 2) = F(1, 1);
  return F;
}

// Random deformation gradient bounded away from inversion.
Tensor2 random_admissible_F(std::mt19937& rng, double scale = 0.3) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  for (;;) {
    Tensor2 F = Tensor2::Identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) F(i, j) += dist(rng);
    if (F.determinant() > 0.3) return F;
  }
}

double fd_step(double v) { return 1e-6 * (1.0 + std::abs(v)); }

}  // namespace

TEST_CASE("energies vanish in the reference configuration") {
  CHECK(vw_energy(Tensor2::Identity(), {1.0, 1.0, 10.0}) == 0.0);
  CHECK(vw_energy(Tensor2::Identity(), {2.0, 100.0, 5.0}) == 0.0);
  CHECK(mr_energy(Tensor2::Identity(), {1.0, 0.5, 10.0}) == 0.0);
}

TEST_CASE("exponential energy matches the arbitrary-precision oracle") {
  // W at F = diag(1.1, 1/sqrt(1.1), 1/sqrt(1.1)), A = 1, B = 1, K = 10
  const double w = vw_energy(uniaxial_incompressible(1.1), {1.0, 1.0, 10.0});
  CHECK(w == doctest::Approx(0.01535954195839446584).epsilon(1e-13));
}

TEST_CASE("exponential energy has a finite small-exponent limit") {
  const Tensor2 F = uniaxial_incompressible(1.1);
  // leading term A (Ibar1 - 3) - (A/2)(Ibar2 - 3) at B -> 0
  const double leading = 0.014958677685950413223;
  CHECK(vw_energy(F, {1.0, 1e-8, 10.0}) ==
        doctest::Approx(leading).epsilon(1e-9));
  CHECK(vw_energy(F, {1.0, 0.0, 10.0}) ==
        doctest::Approx(leading).epsilon(1e-13));
}

TEST_CASE("two-term energy matches the arbitrary-precision oracle") {
  Tensor2 F = Tensor2::Zero();
  F(0, 0) = 0.8;
  F(1, 1) = 1.05;
  F(2, 2) = 1.05;
  CHECK(mr_energy(F, {1.0, 0.5, 10.0}) ==
        doctest::Approx(0.12853593522175762114).epsilon(1e-13));
}

TEST_CASE("upsilon = 1 reduces to the neo-Hookean energy") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Tensor2 F = random_admissible_F(rng);
    const double mu = 0.7, K = 5.0;
    const double I1 = (F.transpose() * F).trace();
    const double J = F.determinant();
    const double nh = 0.5 * mu * (std::pow(J, -2.0 / 3.0) * I1 - 3.0) +
                      0.5 * K * std::log(J) * std::log(J);
    CHECK(mr_energy(F, {mu, 1.0, K}) == doctest::Approx(nh).epsilon(1e-12));
  }
}

TEST_CASE("uniaxial stresses vanish exactly at the reference stretch") {
  CHECK(vw_uniaxial_P(1.0, {1.0, 100.0, 1.0}) == 0.0);
  CHECK(vw_uniaxial_P(1.0, {3.0, 7.0, 1.0}) == 0.0);
  CHECK(mr_uniaxial_P(1.0, {1.0, 0.3, 1.0}) == 0.0);
  CHECK(mr_uniaxial_P(1.0, {2.0, 1.0, 1.0}) == 0.0);
}

TEST_CASE("exponential uniaxial stress matches direct evaluation") {
  CHECK(vw_uniaxial_P(1.1, {1.0, 100.0, 1.0}) ==
        doctest::Approx(8.913381134603395966).epsilon(1e-13));
}

TEST_CASE("uniaxial stress equals the derivative of the constrained energy") {
  // finite differences of W(lambda) along the volume-preserving path
  const VWParams p{1.0, 1.0, 123.0};  // K plays no role at J = 1
  const double lambda = 1.2;
  const double h = 1e-6;
  const double wp = vw_energy(uniaxial_incompressible(lambda + h), p);
  const double wm = vw_energy(uniaxial_incompressible(lambda - h), p);
  CHECK(vw_uniaxial_P(lambda, p) ==
        doctest::Approx((wp - wm) / (2.0 * h)).epsilon(1e-8));
  CHECK(vw_uniaxial_P(lambda, p) ==
        doctest::Approx(0.70362885679009550742).epsilon(1e-13));
}

TEST_CASE("two-term uniaxial stress in compression") {
  CHECK(mr_uniaxial_P(0.5, {1.0, 1.0, 1.0}) ==
        doctest::Approx(-3.5).epsilon(1e-15));
  CHECK(mr_uniaxial_P(0.5, {1.0, 0.0, 1.0}) ==
        doctest::Approx(-7.0).epsilon(1e-15));
}

TEST_CASE("uniaxial stress derivatives match finite differences") {
  const VWParams vw{1.0, 10.0, 1.0};
  const MRParams mr{2.0, 0.4, 1.0};
  for (double lambda : {0.4, 0.8, 1.05, 1.3}) {
    const double h = 1e-7;
    const double fd_vw =
        (vw_uniaxial_P(lambda + h, vw) - vw_uniaxial_P(lambda - h, vw)) /
        (2.0 * h);
    CHECK(vw_uniaxial_dP(lambda, vw) ==
          doctest::Approx(fd_vw).epsilon(1e-6));
    const double fd_mr =
        (mr_uniaxial_P(lambda + h, mr) - mr_uniaxial_P(lambda - h, mr)) /
        (2.0 * h);
    CHECK(mr_uniaxial_dP(lambda, mr) ==
          doctest::Approx(fd_mr).epsilon(1e-6));
  }
}

TEST_CASE("uniaxial stress family") {
  for (int n = 0; n <= 2; ++n) {
    CHECK(neo_hookean_sigma_n(1.0, static_cast<StressMeasure>(n)) == 0.0);
  }
  CHECK(neo_hookean_sigma_n(0.5, StressMeasure::Cauchy) ==
        doctest::Approx(-1.75).epsilon(1e-15));
  CHECK(neo_hookean_sigma_n(0.5, StressMeasure::SecondPK) ==
        doctest::Approx(-7.0).epsilon(1e-15));
  CHECK_THROWS_AS(neo_hookean_sigma_n(-0.1, StressMeasure::Cauchy),
                  NegativeStretch);
}

TEST_CASE("uniaxial stress family is unbounded in strong compression") {
  // |sigma| ~ lambda^{-1-n}; the probe stretch must satisfy 1/lambda > 1e6
  // already for n = 0
  for (int n = 0; n <= 2; ++n) {
    CHECK(std::abs(neo_hookean_sigma_n(1e-7, static_cast<StressMeasure>(n))) >
          1e6);
  }
  CHECK(std::abs(neo_hookean_sigma_n(1e-3, StressMeasure::SecondPK)) > 1e6);
}

TEST_CASE("two-term uniaxial stress decreases monotonically in compression") {
  for (double upsilon : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const MRParams p{1.7, upsilon, 1.0};
    double prev = mr_uniaxial_P(0.019, p);
    for (double lambda = 0.02; lambda < 1.0; lambda += 0.007) {
      const double cur = mr_uniaxial_P(lambda, p);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("stress tensor vanishes at the reference configuration") {
  const MaterialParams vw = VWParams{1.0, 50.0, 10.0};
  const MaterialParams mr = MRParams{1.0, 0.5, 10.0};
  CHECK(pk1_stress(Tensor2::Identity(), vw).norm() < 1e-14);
  CHECK(pk1_stress(Tensor2::Identity(), mr).norm() < 1e-14);
}

TEST_CASE("stress is the energy gradient (finite differences)") {
  std::mt19937 rng(17);
  const MaterialParams models[] = {MaterialParams{VWParams{1.0, 5.0, 10.0}},
                                   MaterialParams{MRParams{2.0, 0.3, 8.0}}};
  for (const auto& m : models) {
    for (int trial = 0; trial < 100; ++trial) {
      const Tensor2 F = random_admissible_F(rng);
      const Tensor2 P = pk1_stress(F, m);
      const double scale = P.cwiseAbs().maxCoeff() + 1.0;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const double h = fd_step(F(i, j));
          Tensor2 Fp = F, Fm = F;
          Fp(i, j) += h;
          Fm(i, j) -= h;
          const double fd =
              (strain_energy(Fp, m) - strain_energy(Fm, m)) / (2.0 * h);
          CHECK(std::abs(P(i, j) - fd) / scale < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("tangent matches finite differences of the stress") {
  std::mt19937 rng(23);
  const MaterialParams models[] = {MaterialParams{VWParams{1.0, 5.0, 10.0}},
                                   MaterialParams{MRParams{1.5, 0.6, 12.0}}};
  for (const auto& m : models) {
    for (int trial = 0; trial < 25; ++trial) {
      const Tensor2 F = random_admissible_F(rng);
      const Tangent4 A = material_tangent(F, m);
      double max_a = 0.0;
      for (double v : A.v) max_a = std::max(max_a, std::abs(v));
      for (int k = 0; k < 3; ++k) {
        for (int L = 0; L < 3; ++L) {
          const double h = fd_step(F(k, L));
          Tensor2 Fp = F, Fm = F;
          Fp(k, L) += h;
          Fm(k, L) -= h;
          const Tensor2 dP = (pk1_stress(Fp, m) - pk1_stress(Fm, m)) / (2.0 * h);
          for (int i = 0; i < 3; ++i) {
            for (int J = 0; J < 3; ++J) {
              CHECK(std::abs(A(i, J, k, L) - dP(i, J)) / max_a < 1e-5);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("tangent has major symmetry at the reference configuration") {
  const MaterialParams nh = MRParams{1.0, 1.0, 10.0};
  const Tangent4 A = material_tangent(Tensor2::Identity(), nh);
  for (int i = 0; i < 3; ++i)
    for (int J = 0; J < 3; ++J)
      for (int k = 0; k < 3; ++k)
        for (int L = 0; L < 3; ++L)
          CHECK(A(i, J, k, L) == doctest::Approx(A(k, L, i, J)).epsilon(1e-12));
}

TEST_CASE("tangent keeps major symmetry away from the reference state") {
  std::mt19937 rng(29);
  const MaterialParams models[] = {MaterialParams{VWParams{1.0, 3.0, 10.0}},
                                   MaterialParams{MRParams{1.0, 0.2, 10.0}}};
  for (const auto& m : models) {
    const Tensor2 F = random_admissible_F(rng);
    const Tangent4 A = material_tangent(F, m);
    double max_a = 0.0;
    for (double v : A.v) max_a = std::max(max_a, std::abs(v));
    for (int i = 0; i < 3; ++i)
      for (int J = 0; J < 3; ++J)
        for (int k = 0; k < 3; ++k)
          for (int L = 0; L < 3; ++L)
            CHECK(std::abs(A(i, J, k, L) - A(k, L, i, J)) / max_a < 1e-12);
  }
}

TEST_CASE("3D stress reproduces the uniaxial closed form under the penalty") {
  // With a stiff penalty, solving the lateral traction-free condition
  // numerically and reading off the axial component must land on the
  // closed-form uniaxial stress.
  const double A = 1.0, B = 2.0, K = 1e4;
  const MaterialParams m = VWParams{A, B, K};
  const VWParams closed{A, B, K};
  for (double lambda : {0.8, 1.1, 1.3}) {
    auto lateral_stress = [&](double l2) {
      Tensor2 F = Tensor2::Zero();
      F(0, 0) = lambda;
      F(1, 1) = l2;
      F(2, 2) = l2;
      return pk1_stress(F, m)(1, 1);
    };
    double lo = 0.3, hi = 2.5;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (lateral_stress(lo) * lateral_stress(mid) <= 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    Tensor2 F = Tensor2::Zero();
    F(0, 0) = lambda;
    F(1, 1) = 0.5 * (lo + hi);
    F(2, 2) = F(1, 1);
    const double p11 = pk1_stress(F, m)(0, 0);
    CHECK(p11 ==
          doctest::Approx(vw_uniaxial_P(lambda, closed)).epsilon(1e-2));
  }
}

TEST_CASE("inadmissible states are rejected") {
  Tensor2 F = Tensor2::Identity();
  F(0, 0) = -0.5;
  const MaterialParams m = VWParams{1.0, 1.0, 1.0};
  CHECK_THROWS_AS(pk1_stress(F, m), NonPositiveJacobian);
  CHECK_THROWS_AS(material_tangent(F, m), NonPositiveJacobian);
  CHECK_THROWS_AS(vw_energy(F, {1.0, 1.0, 1.0}), NonPositiveJacobian);
  CHECK_THROWS_AS(mr_energy(F, {1.0, 0.5, 1.0}), NonPositiveJacobian);
  CHECK_THROWS_AS(vw_uniaxial_P(-1.0, {1.0, 1.0, 1.0}), NegativeStretch);
  CHECK_THROWS_AS(mr_uniaxial_P(0.0, {1.0, 0.5, 1.0}), NegativeStretch);
}
