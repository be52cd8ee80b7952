#ifndef BPDG_PHYSICS_HPP_
#define BPDG_PHYSICS_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "bpdg/field.hpp"
#include "bpdg/mesh.hpp"

namespace bpdg {

using SpaceTimeFunction = std::function<double(Point, double)>;
using Velocity = std::array<double, 2>;

/// A point source/sink smeared uniformly over the cell containing it.
/// rate > 0 injects fluid of concentration injected_concentration.
struct Well {
  Point location;
  double rate = 0.0;
  double injected_concentration = 0.0;
};

struct ExactSolution {
  double c = 0.0;
  double p = 0.0;
};

using ExactFunction = std::function<ExactSolution(Point, double)>;

/// Physical coefficients of the two-component compressible displacement
/// model. The diffusion tensor is phi (d_mol I + d_long |u| E + d_tran |u| E^perp).
struct ProblemSpec {
  std::string name;
  double z1 = 1.0;  // compressibility of the tracked component
  double z2 = 1.0;
  ScalarFunction porosity = [](Point) { return 1.0; };
  ScalarFunction permeability = [](Point) { return 1.0; };
  std::function<double(double)> viscosity = [](double) { return 1.0; };
  double d_mol = 0.0;
  double d_long = 0.0;
  double d_tran = 0.0;
  SpaceTimeFunction source = [](Point, double) { return 0.0; };
  SpaceTimeFunction injected_concentration = [](Point, double) { return 0.0; };
  std::vector<Well> wells;
  ScalarFunction initial_concentration = [](Point) { return 0.0; };
  ScalarFunction initial_pressure = [](Point) { return 0.0; };
  ExactFunction exact;  // empty when no closed form is known

  /// Checks the sign conditions on the scalar parameters.
  void validate() const;
};

struct DiffusionTensor {
  double d11 = 0.0;
  double d12 = 0.0;
  double d21 = 0.0;
  double d22 = 0.0;
};

/// a(c) = mu(c) / kappa(x).
double coeff_a(const ProblemSpec& spec, double c, Point x);

/// d~(r) = z1 r + z2 (Phi - r); replaces d(c) in the pressure equation.
double coeff_d_tilde(const ProblemSpec& spec, double r, double phi);

/// d(c) = phi (z1 c + z2 (1 - c)).
double coeff_d(const ProblemSpec& spec, double c, Point x);

/// b(c) = phi c {z1 - z1 c - z2 (1 - c)}. Only appears in the
/// non-conservative model; the scheme never evaluates it.
double coeff_b(const ProblemSpec& spec, double c, Point x);

/// Dispersion tensor at velocity u. For u = 0 the velocity-dependent parts
/// vanish and phi d_mol I is returned.
DiffusionTensor diffusion_tensor(const ProblemSpec& spec, Velocity u, Point x);

/// One-dimensional reduction, where E = 1 and E^perp = 0.
double diffusion_scalar(const ProblemSpec& spec, double u, Point x);

struct SourceSample {
  double q = 0.0;
  double c_tilde = 0.0;
};

/// q and c~ at a point. c~ is the injected concentration where q > 0, the
/// resident concentration c_local where q < 0 and 0 where q = 0.
/// well_rate_density is the smeared rate of a well in the enclosing cell.
SourceSample source_terms(const ProblemSpec& spec, Point x, double t, double c_local,
                          double well_rate_density = 0.0, double well_injected = 0.0);

/// Closed-form solutions of the two manufactured test problems (ids 1 and 4).
ExactSolution exact_solution(int example, Point x, double t, double gamma);

}  // namespace bpdg

#endif  // BPDG_PHYSICS_HPP_
