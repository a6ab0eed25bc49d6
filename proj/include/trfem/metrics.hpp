#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "trfem/errors.hpp"
#include "trfem/transforms.hpp"

namespace trfem {

/// Scalar function with first and second derivative evaluators. Analytic
/// where available; otherwise central differences with step
/// h = 1e-5 (1 + |x|).
struct ScalarFunction {
  std::function<double(double)> f;
  std::function<double(double)> df;
  std::function<double(double)> d2f;

  double operator()(double x) const { return f(x); }

  static ScalarFunction with_derivatives(std::function<double(double)> g,
                                         std::function<double(double)> dg,
                                         std::function<double(double)> d2g);
  /// Derivatives by central finite differences of g.
  static ScalarFunction from_pointwise(std::function<double(double)> g);
};

/// Local and supremum nonlinearity measures over the sample grid used.
struct NonlinearityReport {
  double local;
  double supremum;
  std::vector<double> zeta_grid;
};

/// |g''(x_n) / (2 g'(x_n))|. Throws VanishingDerivative when the first
/// derivative is below 1e-14 (1 + |g(x_n)|).
double local_nonlinearity(const ScalarFunction& g, double x_n);

/// max over an inclusive uniform grid of zeta in [x_n, x_star] of
/// |g''(zeta) / (2 g'(x_n))|. samples >= 2.
double sup_nonlinearity(const ScalarFunction& g, double x_n, double x_star,
                        int samples = 10001);

NonlinearityReport nonlinearity_report(const ScalarFunction& g, double x_n,
                                       double x_star, int samples = 10001);

/// Composition T(g(.)) with chain-rule derivatives. Log requires g > 0 at
/// evaluation points (DomainViolation otherwise); arctan uses
/// T(y) = atan(y / beta) with beta = sqrt(beta_sq).
ScalarFunction transformed_function(const ScalarFunction& g, TransformKind t,
                                    double beta_sq = 3.0);

/// Cell of a comparison region: 1 where the untransformed supremum measure
/// is smaller than the transformed one, 0 otherwise, -1 where a domain
/// error made either side undefined.
struct ComparisonRegion {
  std::vector<double> x_grid;   // columns: solution points x*
  std::vector<double> xn_grid;  // rows: starting points x_n
  std::vector<std::int8_t> cells;  // row-major xn x x

  std::int8_t at(std::size_t row, std::size_t col) const {
    return cells[row * x_grid.size() + col];
  }
  /// Fraction of defined cells that are true.
  double true_fraction() const;
};

ComparisonRegion comparison_region(const ScalarFunction& g, TransformKind t,
                                   std::span<const double> x_grid,
                                   std::span<const double> xn_grid,
                                   int samples = 10001, double beta_sq = 3.0);

/// CSV matrix: header row of x coordinates, one row per x_n. Undefined
/// entries are written as nan. Values use 9 significant digits.
void write_region_csv(const ComparisonRegion& region, std::ostream& os);

}  // namespace trfem
