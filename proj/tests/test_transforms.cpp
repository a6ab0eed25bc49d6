#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "trfem/transforms.hpp"

using namespace trfem;

namespace {

TransformSpec spec_with(TransformKind kind, double tol = 1e-10) {
  const std::array<int, 1> traction{0};
  TransformSpec s = TransformSpec::uniform(kind, 1, traction);
  s.tol = tol;
  return s;
}

}  // namespace

TEST_CASE("log trigger condition") {
  CHECK(log_condition({1.0, 2.0}, 1e-10));
  CHECK(log_condition({-1.0, -2.0}, 1e-10));
  CHECK_FALSE(log_condition({1.0, -2.0}, 1e-10));
  CHECK_FALSE(log_condition({1e-12, 2.0}, 1e-10));
  CHECK_FALSE(log_condition({1.0, 1e-12}, 1e-10));
}

TEST_CASE("log residual values") {
  CHECK(log_residual({5.0, 5.0}) == 0.0);
  CHECK(log_residual({1.0, std::exp(1.0)}) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(log_residual({1.0, -1.0}), DomainViolation);
  CHECK_THROWS_AS(log_residual({0.0, 1.0}), DomainViolation);
}

TEST_CASE("log residual reduces to the standard one near equilibrium") {
  for (double f_int : {2.0, -3.0, 1e4}) {
    const double f_ext = f_int * (1.0 + 1e-6);
    const double standard = f_ext - f_int;
    CHECK(std::abs(log_residual({f_int, f_ext}) - standard) <=
          1e-10 * std::abs(f_int));
  }
}

TEST_CASE("scaling-factor calibration") {
  // tan(pi/4) = 1
  CHECK(calibrate_alpha(-1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  const double pi = std::acos(-1.0);
  CHECK(calibrate_alpha(-0.2, 0.9) ==
        doctest::Approx(std::tan(0.05 * pi) / 0.2).epsilon(1e-14));
  // approaches zero as the stretch approaches the reference
  CHECK(calibrate_alpha(-1.0, 1.0 - 1e-5) ==
        doctest::Approx(0.5 * pi * 1e-5).epsilon(1e-4));
}

TEST_CASE("calibration refusals") {
  CHECK_THROWS_AS(calibrate_alpha(-1.0, 1.2), DegenerateCalibration);
  CHECK_THROWS_AS(calibrate_alpha(-1.0, 1.0 - 1e-8), DegenerateCalibration);
  CHECK_THROWS_AS(calibrate_alpha(-1.0, 1e-4), DegenerateCalibration);
  CHECK_THROWS_AS(calibrate_alpha(0.0, 0.5), DegenerateCalibration);
}

TEST_CASE("arctan trigger condition") {
  TransformSpec s = spec_with(TransformKind::Arctan);
  CHECK_FALSE(arctan_condition({0.5, 1.0}, s, 0));  // no alpha yet
  s.alpha[0] = 1.0;
  CHECK(arctan_condition({0.5, 1.0}, s, 0));
  CHECK_FALSE(arctan_condition({0.5, 0.0}, s, 0));
}

TEST_CASE("arctan residual values") {
  CHECK(arctan_residual({3.0, 3.0}, 0.7) == 0.0);
  const double pi = std::acos(-1.0);
  CHECK(arctan_residual({0.0, 1.0}, 1.0) ==
        doctest::Approx(0.25 * pi).epsilon(1e-15));
  CHECK_THROWS_AS(arctan_residual({1.0, 2.0}, -1.0), DomainViolation);
  CHECK_THROWS_AS(arctan_residual({1.0, 2.0}, 0.0), DomainViolation);
}

TEST_CASE("arctan residual equals (T(f_ext) - T(f_int)) / T'(f_int)") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> force(-5.0, 5.0);
  std::uniform_real_distribution<double> alpha_dist(0.05, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double fi = force(rng), fe = force(rng);
    const double a = alpha_dist(rng);
    const double t_prime = a / (1.0 + a * fi * a * fi);
    const double expected = (std::atan(a * fe) - std::atan(a * fi)) / t_prime;
    CHECK(arctan_residual({fi, fe}, a) ==
          doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("arctan residual reduces to the standard one as alpha -> 0") {
  const double fi = 2.0, fe = 3.0;
  const double standard = fe - fi;
  const double r = arctan_residual({fi, fe}, 1e-8);
  CHECK(std::abs(r - standard) <= 1e-8 * std::abs(standard));
}

TEST_CASE("arctan residual: first-order equivalence near equilibrium") {
  for (double fi : {2.0, -4.0}) {
    const double fe = fi * (1.0 + 1e-6);
    const double r = arctan_residual({fi, fe}, 0.8);
    CHECK(std::abs(r - (fe - fi)) <= 1e-10 * std::abs(fi));
  }
}

TEST_CASE("modified residual dispatch") {
  SUBCASE("identity is always standard") {
    const TransformSpec s = spec_with(TransformKind::Identity);
    CHECK(modified_residual({1.0, 5.0}, s, 0) == 4.0);
    CHECK(modified_residual({-2.0, 1.0}, s, 0) == 3.0);
  }
  SUBCASE("log falls back on opposite signs") {
    const TransformSpec s = spec_with(TransformKind::Log);
    CHECK(modified_residual({1.0, -2.0}, s, 0) == -3.0);
    CHECK(modified_residual({1.0, 2.0}, s, 0) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-15));
  }
  SUBCASE("arctan uses the calibrated branch") {
    TransformSpec s = spec_with(TransformKind::Arctan);
    CHECK(modified_residual({1.0, 2.0}, s, 0) == 1.0);  // no alpha yet
    s.alpha[0] = 0.9;
    CHECK(modified_residual({1.0, 2.0}, s, 0) ==
          doctest::Approx(arctan_residual({1.0, 2.0}, 0.9)).epsilon(1e-15));
  }
}

TEST_CASE("modified residual is total and sign-consistent") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> force(-10.0, 10.0);
  for (TransformKind kind :
       {TransformKind::Identity, TransformKind::Log, TransformKind::Arctan}) {
    TransformSpec s = spec_with(kind);
    s.alpha[0] = 0.5;
    for (int trial = 0; trial < 500; ++trial) {
      const ResidualPair r{force(rng), force(rng)};
      const double v = modified_residual(r, s, 0);
      CHECK(std::isfinite(v));
      const double standard = r.f_ext - r.f_int;
      if (standard != 0.0 && v != 0.0) {
        CHECK(std::signbit(v) == std::signbit(standard));
      }
    }
  }
}

TEST_CASE("nodal stretch averaging") {
  const std::array<double, 3> uniform{0.8, 0.8, 0.8};
  CHECK(nodal_stretch(uniform) == doctest::Approx(0.8).epsilon(1e-15));
  const std::array<double, 2> pair{0.7, 0.9};
  CHECK(nodal_stretch(pair) == doctest::Approx(0.8).epsilon(1e-15));
  CHECK_THROWS_AS(nodal_stretch({}), IsolatedNode);
}
