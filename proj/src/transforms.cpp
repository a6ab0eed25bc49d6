#include "trfem/transforms.hpp"

#include <numeric>

namespace trfem {

std::string to_string(TransformKind k) {
  switch (k) {
    case TransformKind::Identity: return "identity";
    case TransformKind::Log: return "log";
    case TransformKind::Arctan: return "arctan";
  }
  return "identity";
}

TransformKind transform_from_string(const std::string& s) {
  if (s == "identity" || s == "standard") return TransformKind::Identity;
  if (s == "log") return TransformKind::Log;
  if (s == "arctan") return TransformKind::Arctan;
  throw ConfigError("unknown formulation '" + s +
                    "' (expected identity, log or arctan)");
}

TransformSpec TransformSpec::uniform(TransformKind k, int n_dofs,
                                     std::span<const int> traction_dofs) {
  TransformSpec spec;
  spec.kind.assign(static_cast<std::size_t>(n_dofs), TransformKind::Identity);
  spec.alpha.assign(static_cast<std::size_t>(n_dofs),
                    std::numeric_limits<double>::quiet_NaN());
  for (int d : traction_dofs) {
    spec.kind[static_cast<std::size_t>(d)] = k;
  }
  return spec;
}

bool log_condition(const ResidualPair& r, double tol) {
  return std::abs(r.f_ext) > tol && std::abs(r.f_int) > tol &&
         std::signbit(r.f_ext) == std::signbit(r.f_int);
}

double log_residual(const ResidualPair& r) {
  if (r.f_int == 0.0 || r.f_ext == 0.0 ||
      std::signbit(r.f_ext) != std::signbit(r.f_int)) {
    throw DomainViolation(
        "log_residual: forces must be non-zero and of the same sign");
  }
  return r.f_int * std::log(r.f_ext / r.f_int);
}

double calibrate_alpha(double f_int, double lambda_node) {
  constexpr double lambda_min = 1e-3;
  constexpr double eps = 1e-6;
  if (!(lambda_node > lambda_min) || !(lambda_node < 1.0 - eps)) {
    throw DegenerateCalibration("calibrate_alpha: lambda = " +
                                std::to_string(lambda_node));
  }
  if (f_int == 0.0) {
    throw DegenerateCalibration("calibrate_alpha: f_int = 0");
  }
  const double pi = std::acos(-1.0);
  return std::abs(std::tan(0.5 * pi * (1.0 - lambda_node)) / f_int);
}

bool arctan_condition(const ResidualPair& r, const TransformSpec& spec,
                      int dof) {
  return std::abs(r.f_ext) > spec.tol && spec.has_alpha(dof);
}

double arctan_residual(const ResidualPair& r, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw DomainViolation("arctan_residual: alpha must be finite and positive");
  }
  const double t = alpha * r.f_int;
  return (1.0 + t * t) / alpha *
         (std::atan(alpha * r.f_ext) - std::atan(t));
}

double modified_residual(const ResidualPair& r, const TransformSpec& spec,
                         int dof) {
  const double standard = r.f_ext - r.f_int;
  switch (spec.kind[static_cast<std::size_t>(dof)]) {
    case TransformKind::Identity:
      return standard;
    case TransformKind::Log:
      return log_condition(r, spec.tol) ? log_residual(r) : standard;
    case TransformKind::Arctan:
      return arctan_condition(r, spec, dof)
                 ? arctan_residual(r, spec.alpha[static_cast<std::size_t>(dof)])
                 : standard;
  }
  return standard;
}

double nodal_stretch(std::span<const double> element_stretches) {
  if (element_stretches.empty()) {
    throw IsolatedNode("nodal_stretch: node has no adjacent elements");
  }
  const double sum = std::accumulate(element_stretches.begin(),
                                     element_stretches.end(), 0.0);
  return sum / static_cast<double>(element_stretches.size());
}

}  // namespace trfem
