#ifndef BPDG_SCHEME_HPP_
#define BPDG_SCHEME_HPP_

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "bpdg/field.hpp"
#include "bpdg/mesh.hpp"
#include "bpdg/physics.hpp"

namespace bpdg {

/// Raised when a weighted mass matrix becomes singular (d~ <= 0 or a
/// non-finite coefficient at a quadrature node).
class SchemeBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FluxVariant { UpwindPlus, UpwindMinus, Central };

std::string to_string(FluxVariant v);
FluxVariant parse_flux_variant(const std::string& s);  // upwind+ | upwind- | central

/// A consistent triple of numerical fluxes (u^, p^, uc^). The velocity
/// flux is u^ = w+ u+ + w- u-, the pressure flux takes the opposite side,
/// and uc^ = w+ u+ c+ + w- u- c- - alpha [c], so uc^ reduces to u^ at c = 1.
struct FluxPair {
  FluxVariant variant = FluxVariant::UpwindPlus;

  double plus_weight() const;
  double minus_weight() const;

  double velocity(const Trace& u) const;
  double pressure(const Trace& p) const;
  double convection(const Trace& u, const Trace& c, double alpha) const;

  /// Coefficients of c+ and c- in uc^: A+ = w+ u+ - alpha, A- = w- u- + alpha.
  double coeff_plus(const Trace& u, double alpha) const;
  double coeff_minus(const Trace& u, double alpha) const;
};

double numerical_flux_uc(const Trace& u, const Trace& c, double alpha, FluxVariant variant);

struct Penalties {
  double alpha = 0.0;        // convection
  double alpha_tilde = 0.0;  // interior-penalty diffusion
};

/// The evolved unknowns (p, r) at time t.
template <int Dim>
struct State {
  double t = 0.0;
  DGField<Dim> p;
  DGField<Dim> r;
};

using State1D = State<1>;
using State2D = State<2>;

template <int Dim>
using VelocityField = std::array<DGField<Dim>, Dim>;

/// Everything computed from one state by a full right-hand-side evaluation.
template <int Dim>
struct Rates {
  DGField<Dim> c;
  VelocityField<Dim> u;
  Penalties penalties;
  DGField<Dim> p_t;
  DGField<Dim> r_t;
};

/// Cell-average split of one forward Euler step.
struct Decomposition1D {
  double convection = 0.0;
  double diffusion = 0.0;
  double source = 0.0;
  double sum() const { return convection + diffusion + source; }
};

struct Decomposition2D {
  double convection = 0.0;
  double diffusion_x = 0.0;
  double diffusion_y = 0.0;
  double source = 0.0;
  double sum() const { return convection + diffusion_x + diffusion_y + source; }
};

/// Maxima of the dispersion coefficients over all volume and trace
/// quadrature nodes. Off-diagonal maxima are of absolute values.
struct DiffusionExtrema {
  double d_max = 0.0;  // 1D scalar
  double d11 = 0.0;
  double d12 = 0.0;
  double d21 = 0.0;
  double d22 = 0.0;
};

/// P1 discretization on a uniform 1D grid.
class Scheme1D {
 public:
  static constexpr int kDim = 1;
  using MeshType = Mesh1D;
  using Field = Field1D;
  using StateType = State1D;
  using Velocity = VelocityField<1>;
  using Decomposition = Decomposition1D;

  Scheme1D(Mesh1D mesh, ProblemSpec spec, FluxPair flux = {});

  const Mesh1D& mesh() const { return mesh_; }
  const ProblemSpec& spec() const { return spec_; }
  const FluxPair& flux() const { return flux_; }
  const PorosityInterpolant<1>& porosity() const { return phi_; }

  /// r = I1{phi c0}, p = I1{p0}, t = 0.
  State1D initial_state() const;

  Field1D concentration(const State1D& s) const;
  Velocity solve_velocity(const State1D& s, const Field1D& c) const;
  Field1D solve_pressure_rate(const State1D& s, const Velocity& u) const;
  Field1D concentration_rhs(const State1D& s, const Field1D& c, const Velocity& u,
                            const Field1D& p_t, const Penalties& pen) const;
  std::vector<Decomposition1D> cell_average_decomposition(const State1D& s, const Field1D& c,
                                                          const Velocity& u, const Field1D& p_t,
                                                          const Penalties& pen,
                                                          double dt) const;

  /// Velocity and dispersion traces at interface k.
  Trace velocity_trace(const Velocity& u, int k) const;
  Trace diffusion_trace(const Velocity& u, int k) const;

  /// max(w+ u+, -w- u-, 0) over interior interfaces.
  double convection_penalty_floor(const Velocity& u) const;
  DiffusionExtrema diffusion_extrema(const Velocity& u) const;

  /// Total source rate q (including wells) at volume Gauss node g of cell j.
  double source_rate(int cell, int g, double t) const;

  /// Values of a field at the two volume Gauss nodes of a cell.
  std::array<double, 2> gauss_values(const Field1D& f, int cell) const;

 private:
  struct InterfaceTerms {
    double conv = 0.0;   // uc^
    double flux = 0.0;   // {D c_x}
    double jump = 0.0;   // [c]
    double d_minus = 0.0;
    double d_plus = 0.0;
  };
  struct Assembly {
    std::vector<InterfaceTerms> faces;
    std::vector<std::array<double, 2>> source;  // c~ q - z1 r p_t at Gauss nodes
  };

  double dispersion(double u, double phi) const;
  Assembly assemble(const State1D& s, const Field1D& c, const Velocity& u, const Field1D& p_t,
                    const Penalties& pen) const;

  Mesh1D mesh_;
  ProblemSpec spec_;
  FluxPair flux_;
  PorosityInterpolant<1> phi_;
  std::vector<std::array<Point, 2>> xg_;
  std::vector<std::array<double, 2>> phig_;
  std::vector<std::array<double, 2>> kappag_;
  std::vector<double> phi_face_;
  std::vector<double> well_density_;
  std::vector<double> well_injected_;
};

/// Q1 discretization on a uniform rectangular grid.
class Scheme2D {
 public:
  static constexpr int kDim = 2;
  using MeshType = Mesh2D;
  using Field = Field2D;
  using StateType = State2D;
  using Velocity = VelocityField<2>;
  using Decomposition = Decomposition2D;

  Scheme2D(Mesh2D mesh, ProblemSpec spec, FluxPair flux = {});

  const Mesh2D& mesh() const { return mesh_; }
  const ProblemSpec& spec() const { return spec_; }
  const FluxPair& flux() const { return flux_; }
  const PorosityInterpolant<2>& porosity() const { return phi_; }

  State2D initial_state() const;

  Field2D concentration(const State2D& s) const;
  Velocity solve_velocity(const State2D& s, const Field2D& c) const;
  Field2D solve_pressure_rate(const State2D& s, const Velocity& u) const;
  Field2D concentration_rhs(const State2D& s, const Field2D& c, const Velocity& u,
                            const Field2D& p_t, const Penalties& pen) const;
  std::vector<Decomposition2D> cell_average_decomposition(const State2D& s, const Field2D& c,
                                                          const Velocity& u, const Field2D& p_t,
                                                          const Penalties& pen,
                                                          double dt) const;

  /// Normal velocity traces at Gauss node beta (0 or 1) of an edge.
  Trace velocity_trace(const Velocity& u, int edge, int beta) const;

  double convection_penalty_floor(const Velocity& u) const;
  DiffusionExtrema diffusion_extrema(const Velocity& u) const;

  double source_rate(int cell, int g, double t) const;
  std::array<double, 4> gauss_values(const Field2D& f, int cell) const;

  /// Reference coordinates of Gauss node beta on an edge, seen from the
  /// minus or plus cell.
  static std::array<double, 2> edge_point(Axis normal, bool plus_side, int beta);

 private:
  struct EdgeTerms {
    std::array<double, 2> conv{};  // per Gauss node
    std::array<double, 2> flux{};  // {n^T D grad c}
    std::array<double, 2> jump{};
    std::array<std::array<double, 2>, 2> row_minus{};  // n^T D(u-) per node
    std::array<std::array<double, 2>, 2> row_plus{};
  };
  struct Assembly {
    std::vector<EdgeTerms> edges;
    std::vector<std::array<double, 4>> source;
  };

  std::array<double, 2> velocity_at(const Velocity& u, int cell, double xi, double eta) const;
  DiffusionTensor dispersion(const std::array<double, 2>& u, double phi) const;
  std::array<double, 2> gradient(const Field2D& f, int cell, double xi, double eta) const;
  Assembly assemble(const State2D& s, const Field2D& c, const Velocity& u, const Field2D& p_t,
                    const Penalties& pen) const;

  Mesh2D mesh_;
  ProblemSpec spec_;
  FluxPair flux_;
  PorosityInterpolant<2> phi_;
  std::vector<std::array<Point, 4>> xg_;
  std::vector<std::array<double, 4>> phig_;
  std::vector<std::array<double, 4>> kappag_;
  std::vector<std::array<double, 2>> phi_edge_;
  std::vector<double> well_density_;
  std::vector<double> well_injected_;
};

}  // namespace bpdg

#endif  // BPDG_SCHEME_HPP_
