#include "bpdg/physics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bpdg {

void ProblemSpec::validate() const {
  if (z1 < 0.0 || z2 < 0.0) throw std::invalid_argument("compressibility factors must be >= 0");
  if (d_mol < 0.0 || d_long < 0.0 || d_tran < 0.0) {
    throw std::invalid_argument("diffusion coefficients must be >= 0");
  }
  if (!porosity || !permeability || !viscosity || !source || !injected_concentration ||
      !initial_concentration || !initial_pressure) {
    throw std::invalid_argument("problem '" + name + "' has an unset coefficient function");
  }
}

double coeff_a(const ProblemSpec& spec, double c, Point x) {
  const double kappa = spec.permeability(x);
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("permeability must be positive, got " + std::to_string(kappa));
  }
  return spec.viscosity(c) / kappa;
}

double coeff_d_tilde(const ProblemSpec& spec, double r, double phi) {
  return spec.z1 * r + spec.z2 * (phi - r);
}

double coeff_d(const ProblemSpec& spec, double c, Point x) {
  return spec.porosity(x) * (spec.z1 * c + spec.z2 * (1.0 - c));
}

double coeff_b(const ProblemSpec& spec, double c, Point x) {
  const double c2 = 1.0 - c;
  return spec.porosity(x) * c * (spec.z1 - (spec.z1 * c + spec.z2 * c2));
}

DiffusionTensor diffusion_tensor(const ProblemSpec& spec, Velocity u, Point x) {
  const double phi = spec.porosity(x);
  const double norm2 = u[0] * u[0] + u[1] * u[1];
  DiffusionTensor d{phi * spec.d_mol, 0.0, 0.0, phi * spec.d_mol};
  if (norm2 == 0.0) return d;
  const double norm = std::sqrt(norm2);
  const double e11 = u[0] * u[0] / norm2;
  const double e12 = u[0] * u[1] / norm2;
  const double e22 = u[1] * u[1] / norm2;
  const double l = phi * spec.d_long * norm;
  const double t = phi * spec.d_tran * norm;
  d.d11 += l * e11 + t * (1.0 - e11);
  d.d12 += (l - t) * e12;
  d.d21 = d.d12;
  d.d22 += l * e22 + t * (1.0 - e22);
  return d;
}

double diffusion_scalar(const ProblemSpec& spec, double u, Point x) {
  return spec.porosity(x) * (spec.d_mol + spec.d_long * std::abs(u));
}

SourceSample source_terms(const ProblemSpec& spec, Point x, double t, double c_local,
                          double well_rate_density, double well_injected) {
  SourceSample s;
  s.q = spec.source(x, t) + well_rate_density;
  if (s.q > 0.0) {
    s.c_tilde = well_rate_density > 0.0 ? well_injected : spec.injected_concentration(x, t);
  } else if (s.q < 0.0) {
    s.c_tilde = c_local;
  }
  return s;
}

ExactSolution exact_solution(int example, Point x, double t, double gamma) {
  switch (example) {
    case 1:
      return {0.5 * (1.0 - std::exp(-gamma * t) * std::cos(x.x)),
              std::exp(-t) * (std::cos(x.x) - 1.0)};
    case 4: {
      const double cc = std::cos(x.x) * std::cos(x.y);
      return {0.5 * (1.0 - std::exp(-2.0 * gamma * t) * cc), std::exp(-2.0 * t) * (cc - 1.0)};
    }
    default:
      throw std::invalid_argument("no exact solution for example " + std::to_string(example));
  }
}

}  // namespace bpdg
