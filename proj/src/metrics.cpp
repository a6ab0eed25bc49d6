#include "trfem/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "trfem/csv.hpp"

namespace trfem {

ScalarFunction ScalarFunction::with_derivatives(
    std::function<double(double)> g, std::function<double(double)> dg,
    std::function<double(double)> d2g) {
  return ScalarFunction{std::move(g), std::move(dg), std::move(d2g)};
}

ScalarFunction ScalarFunction::from_pointwise(std::function<double(double)> g) {
  auto step = [](double x) { return 1e-5 * (1.0 + std::abs(x)); };
  auto df = [g, step](double x) {
    const double h = step(x);
    return (g(x + h) - g(x - h)) / (2.0 * h);
  };
  auto d2f = [g, step](double x) {
    const double h = step(x);
    return (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
  };
  return ScalarFunction{std::move(g), std::move(df), std::move(d2f)};
}

namespace {

double checked_slope(const ScalarFunction& g, double x_n) {
  const double d = g.df(x_n);
  const double scale = 1.0 + std::abs(g.f(x_n));
  if (std::abs(d) < 1e-14 * scale) {
    throw VanishingDerivative("nonlinearity measure: g'(x_n) = " +
                              std::to_string(d));
  }
  return d;
}

}  // namespace

double local_nonlinearity(const ScalarFunction& g, double x_n) {
  const double d = checked_slope(g, x_n);
  return std::abs(g.d2f(x_n) / (2.0 * d));
}

double sup_nonlinearity(const ScalarFunction& g, double x_n, double x_star,
                        int samples) {
  if (samples < 2) samples = 2;
  const double d = checked_slope(g, x_n);
  if (x_n == x_star) {
    return std::abs(g.d2f(x_n) / (2.0 * d));
  }
  double max_curv = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double zeta =
        x_n + (x_star - x_n) * static_cast<double>(i) /
                  static_cast<double>(samples - 1);
    max_curv = std::max(max_curv, std::abs(g.d2f(zeta)));
  }
  return max_curv / (2.0 * std::abs(d));
}

NonlinearityReport nonlinearity_report(const ScalarFunction& g, double x_n,
                                       double x_star, int samples) {
  NonlinearityReport r;
  r.local = local_nonlinearity(g, x_n);
  r.supremum = sup_nonlinearity(g, x_n, x_star, samples);
  if (samples < 2) samples = 2;
  r.zeta_grid.resize(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    r.zeta_grid[static_cast<std::size_t>(i)] =
        x_n + (x_star - x_n) * static_cast<double>(i) /
                  static_cast<double>(samples - 1);
  }
  return r;
}

ScalarFunction transformed_function(const ScalarFunction& g, TransformKind t,
                                    double beta_sq) {
  switch (t) {
    case TransformKind::Identity:
      return g;
    case TransformKind::Log: {
      auto val = [g](double x) {
        const double y = g.f(x);
        if (!(y > 0.0)) {
          throw DomainViolation("log transform: g(x) = " + std::to_string(y));
        }
        return std::log(y);
      };
      auto d1 = [g](double x) {
        const double y = g.f(x);
        if (!(y > 0.0)) {
          throw DomainViolation("log transform: g(x) = " + std::to_string(y));
        }
        return g.df(x) / y;
      };
      auto d2 = [g](double x) {
        const double y = g.f(x);
        if (!(y > 0.0)) {
          throw DomainViolation("log transform: g(x) = " + std::to_string(y));
        }
        const double r = g.df(x) / y;
        return g.d2f(x) / y - r * r;
      };
      return ScalarFunction{std::move(val), std::move(d1), std::move(d2)};
    }
    case TransformKind::Arctan: {
      const double beta = std::sqrt(beta_sq);
      auto val = [g, beta](double x) { return std::atan(g.f(x) / beta); };
      // T'(y) = beta / (beta^2 + y^2); T''(y) = -2 beta y / (beta^2 + y^2)^2
      auto d1 = [g, beta, beta_sq](double x) {
        const double y = g.f(x);
        return beta / (beta_sq + y * y) * g.df(x);
      };
      auto d2 = [g, beta, beta_sq](double x) {
        const double y = g.f(x);
        const double den = beta_sq + y * y;
        const double dg = g.df(x);
        return -2.0 * beta * y / (den * den) * dg * dg +
               beta / den * g.d2f(x);
      };
      return ScalarFunction{std::move(val), std::move(d1), std::move(d2)};
    }
  }
  return g;
}

double ComparisonRegion::true_fraction() const {
  std::size_t defined = 0;
  std::size_t truthy = 0;
  for (std::int8_t c : cells) {
    if (c >= 0) {
      ++defined;
      if (c == 1) ++truthy;
    }
  }
  return defined == 0 ? 0.0
                      : static_cast<double>(truthy) /
                            static_cast<double>(defined);
}

ComparisonRegion comparison_region(const ScalarFunction& g, TransformKind t,
                                   std::span<const double> x_grid,
                                   std::span<const double> xn_grid,
                                   int samples, double beta_sq) {
  ComparisonRegion region;
  region.x_grid.assign(x_grid.begin(), x_grid.end());
  region.xn_grid.assign(xn_grid.begin(), xn_grid.end());
  region.cells.assign(x_grid.size() * xn_grid.size(), -1);
  const ScalarFunction tg = transformed_function(g, t, beta_sq);
  for (std::size_t r = 0; r < xn_grid.size(); ++r) {
    for (std::size_t c = 0; c < x_grid.size(); ++c) {
      try {
        const double n_standard =
            sup_nonlinearity(g, xn_grid[r], x_grid[c], samples);
        const double n_transform =
            sup_nonlinearity(tg, xn_grid[r], x_grid[c], samples);
        region.cells[r * x_grid.size() + c] =
            (n_standard < n_transform) ? 1 : 0;
      } catch (const DomainViolation&) {
        // left undefined
      } catch (const VanishingDerivative&) {
        // left undefined
      }
    }
  }
  return region;
}

void write_region_csv(const ComparisonRegion& region, std::ostream& os) {
  os << "x_n\\x";
  for (double x : region.x_grid) os << ',' << csv_num(x);
  os << '\n';
  for (std::size_t r = 0; r < region.xn_grid.size(); ++r) {
    os << csv_num(region.xn_grid[r]);
    for (std::size_t c = 0; c < region.x_grid.size(); ++c) {
      const std::int8_t v = region.at(r, c);
      os << ',' << (v < 0 ? std::string("nan") : std::to_string(int(v)));
    }
    os << '\n';
  }
}

}  // namespace trfem
