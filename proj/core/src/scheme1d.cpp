#include <algorithm>
#include <cmath>
#include <string>

#include "bpdg/scheme.hpp"
#include "gauss_nodal.hpp"

namespace bpdg {

namespace {

const detail::GaussNodal1D kNodal;

void check_weight(double w, const char* what, int cell) {
  if (!(w > 0.0) || !std::isfinite(w)) {
    throw SchemeBreakdown(std::string(what) + " not positive in cell " + std::to_string(cell) +
                          " (value " + std::to_string(w) + ")");
  }
}

}  // namespace

Scheme1D::Scheme1D(Mesh1D mesh, ProblemSpec spec, FluxPair flux)
    : mesh_(mesh), spec_(std::move(spec)), flux_(flux), phi_(spec_.porosity, mesh_) {
  spec_.validate();
  const int n = mesh_.n_cells();
  const auto rule = gauss2();
  xg_.resize(static_cast<std::size_t>(n));
  phig_.resize(static_cast<std::size_t>(n));
  kappag_.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int g = 0; g < 2; ++g) {
      const Point x{mesh_.map(j, rule.points[g]), 0.0};
      xg_[j][g] = x;
      phig_[j][g] = spec_.porosity(x);
      kappag_[j][g] = spec_.permeability(x);
      if (!(kappag_[j][g] > 0.0)) {
        throw std::invalid_argument("permeability must be positive");
      }
    }
  }
  phi_face_.resize(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) phi_face_[k] = spec_.porosity({mesh_.interface(k), 0.0});

  well_density_.assign(static_cast<std::size_t>(n), 0.0);
  well_injected_.assign(static_cast<std::size_t>(n), 0.0);
  for (const Well& w : spec_.wells) {
    const int j = std::clamp(
        static_cast<int>(std::floor((w.location.x - mesh_.domain().lo) / mesh_.dx())), 0, n - 1);
    well_density_[j] += w.rate / mesh_.cell_measure();
    if (w.rate > 0.0) well_injected_[j] = w.injected_concentration;
  }
}

State1D Scheme1D::initial_state() const {
  State1D s;
  s.t = 0.0;
  s.p = interpolate_corners(spec_.initial_pressure, mesh_);
  const Field1D c0 = interpolate_corners(spec_.initial_concentration, mesh_);
  s.r = Field1D(mesh_.n_cells());
  for (int j = 0; j < mesh_.n_cells(); ++j) {
    for (int k = 0; k < 2; ++k) s.r[j][k] = phi_[j][k] * c0[j][k];
  }
  return s;
}

Field1D Scheme1D::concentration(const State1D& s) const { return concentration_from_r(s.r, phi_); }

std::array<double, 2> Scheme1D::gauss_values(const Field1D& f, int cell) const {
  return kNodal.to_gauss(f[cell]);
}

double Scheme1D::dispersion(double u, double phi) const {
  return phi * (spec_.d_mol + spec_.d_long * std::abs(u));
}

double Scheme1D::source_rate(int cell, int g, double t) const {
  return spec_.source(xg_[cell][g], t) + well_density_[cell];
}

Trace Scheme1D::velocity_trace(const Velocity& u, int k) const { return traces(u[0], mesh_, k); }

Trace Scheme1D::diffusion_trace(const Velocity& u, int k) const {
  const Trace ut = velocity_trace(u, k);
  Trace d;
  if (k > 0) d.minus = dispersion(ut.minus, phi_face_[k]);
  if (k < mesh_.n_cells()) d.plus = dispersion(ut.plus, phi_face_[k]);
  return d;
}

Scheme1D::Velocity Scheme1D::solve_velocity(const State1D& s, const Field1D& c) const {
  const int n = mesh_.n_cells();
  const double h = mesh_.dx();
  std::vector<double> p_hat(static_cast<std::size_t>(n + 1));
  p_hat[0] = s.p[0][0];
  p_hat[n] = s.p[n - 1][1];
  for (int k = 1; k < n; ++k) p_hat[k] = flux_.pressure(traces(s.p, mesh_, k));

  Field1D u(n);
  for (int j = 0; j < n; ++j) {
    const auto cg = kNodal.to_gauss(c[j]);
    std::array<double, 2> a{};
    for (int g = 0; g < 2; ++g) {
      a[g] = spec_.viscosity(cg[g]) / kappag_[j][g];
      if (!(a[g] > 0.0) || !std::isfinite(a[g])) {
        throw SchemeBreakdown("a(c) not positive in cell " + std::to_string(j));
      }
    }
    const double pbar = cell_average(s.p[j]);
    const std::array<double, 2> f{-pbar + p_hat[j], pbar - p_hat[j + 1]};
    u[j] = kNodal.mass_solve(f, a, h);
  }
  return {u};
}

Field1D Scheme1D::solve_pressure_rate(const State1D& s, const Velocity& u) const {
  const int n = mesh_.n_cells();
  const double h = mesh_.dx();
  std::vector<double> u_hat(static_cast<std::size_t>(n + 1), 0.0);
  for (int k = 1; k < n; ++k) u_hat[k] = flux_.velocity(traces(u[0], mesh_, k));

  Field1D p_t(n);
  for (int j = 0; j < n; ++j) {
    const auto rg = kNodal.to_gauss(s.r[j]);
    const auto phig = kNodal.to_gauss(phi_[j]);
    std::array<double, 2> w{};
    std::array<double, 2> q{};
    for (int g = 0; g < 2; ++g) {
      w[g] = coeff_d_tilde(spec_, rg[g], phig[g]);
      check_weight(w[g], "d~(r)", j);
      q[g] = source_rate(j, g, s.t);
    }
    const auto mq = kNodal.moments(q, h);
    const double ubar = cell_average(u[0][j]);
    const std::array<double, 2> f{-ubar + u_hat[j] + mq[0], ubar - u_hat[j + 1] + mq[1]};
    p_t[j] = kNodal.mass_solve(f, w, h);
  }
  return p_t;
}

Scheme1D::Assembly Scheme1D::assemble(const State1D& s, const Field1D& c, const Velocity& u,
                                      const Field1D& p_t, const Penalties& pen) const {
  const int n = mesh_.n_cells();
  const double h = mesh_.dx();
  Assembly out;
  out.faces.resize(static_cast<std::size_t>(n + 1));
  auto slope = [&](int j) { return (c[j][1] - c[j][0]) / h; };
  for (int k = 1; k < n; ++k) {
    const Trace ut = traces(u[0], mesh_, k);
    const Trace ct = traces(c, mesh_, k);
    InterfaceTerms& f = out.faces[k];
    f.d_minus = dispersion(ut.minus, phi_face_[k]);
    f.d_plus = dispersion(ut.plus, phi_face_[k]);
    f.conv = flux_.convection(ut, ct, pen.alpha);
    f.flux = 0.5 * (f.d_minus * slope(k - 1) + f.d_plus * slope(k));
    f.jump = ct.jump();
  }

  out.source.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto rg = kNodal.to_gauss(s.r[j]);
    const auto cg = kNodal.to_gauss(c[j]);
    const auto ptg = kNodal.to_gauss(p_t[j]);
    for (int g = 0; g < 2; ++g) {
      const SourceSample src = source_terms(spec_, xg_[j][g], s.t, cg[g], well_density_[j],
                                            well_injected_[j]);
      out.source[j][g] = src.c_tilde * src.q - spec_.z1 * rg[g] * ptg[g];
    }
  }
  return out;
}

Field1D Scheme1D::concentration_rhs(const State1D& s, const Field1D& c, const Velocity& u,
                                    const Field1D& p_t, const Penalties& pen) const {
  const int n = mesh_.n_cells();
  const double h = mesh_.dx();
  const Assembly as = assemble(s, c, u, p_t, pen);
  const double pen_h = pen.alpha_tilde / h;

  Field1D r_t(n);
  for (int j = 0; j < n; ++j) {
    const auto cg = kNodal.to_gauss(c[j]);
    const auto ug = kNodal.to_gauss(u[0][j]);
    const double cx = (c[j][1] - c[j][0]) / h;
    double vol = 0.0;
    for (int g = 0; g < 2; ++g) {
      vol += 0.5 * (ug[g] * cg[g] - dispersion(ug[g], phig_[j][g]) * cx);
    }
    std::array<double, 2> f{-vol, vol};
    if (j > 0) {
      const InterfaceTerms& L = as.faces[j];
      f[0] += L.conv - L.flux - pen_h * L.jump + 0.5 * L.d_plus * L.jump / h;
      f[1] -= 0.5 * L.d_plus * L.jump / h;
    }
    if (j < n - 1) {
      const InterfaceTerms& R = as.faces[j + 1];
      f[1] += -R.conv + R.flux + pen_h * R.jump - 0.5 * R.d_minus * R.jump / h;
      f[0] += 0.5 * R.d_minus * R.jump / h;
    }
    const auto ms = kNodal.moments(as.source[j], h);
    f[0] += ms[0];
    f[1] += ms[1];
    r_t[j] = kNodal.mass_solve(f, {1.0, 1.0}, h);
  }
  return r_t;
}

std::vector<Decomposition1D> Scheme1D::cell_average_decomposition(
    const State1D& s, const Field1D& c, const Velocity& u, const Field1D& p_t,
    const Penalties& pen, double dt) const {
  const int n = mesh_.n_cells();
  const double h = mesh_.dx();
  const double lambda = dt / h;
  const Assembly as = assemble(s, c, u, p_t, pen);
  const double pen_h = pen.alpha_tilde / h;

  std::vector<Decomposition1D> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double third = cell_average(s.r[j]) / 3.0;
    double conv_l = 0.0, conv_r = 0.0, diff_l = 0.0, diff_r = 0.0;
    if (j > 0) {
      const InterfaceTerms& L = as.faces[j];
      conv_l = L.conv;
      diff_l = L.flux + pen_h * L.jump;
    }
    if (j < n - 1) {
      const InterfaceTerms& R = as.faces[j + 1];
      conv_r = R.conv;
      diff_r = R.flux + pen_h * R.jump;
    }
    Decomposition1D& d = out[j];
    d.convection = third + lambda * (conv_l - conv_r);
    d.diffusion = third - lambda * (diff_l - diff_r);
    d.source = third + dt * 0.5 * (as.source[j][0] + as.source[j][1]);
  }
  return out;
}

double Scheme1D::convection_penalty_floor(const Velocity& u) const {
  double m = 0.0;
  const double wp = flux_.plus_weight();
  const double wm = flux_.minus_weight();
  for (int k = 1; k < mesh_.n_cells(); ++k) {
    const Trace ut = velocity_trace(u, k);
    m = std::max({m, wp * ut.plus, -wm * ut.minus});
  }
  return m;
}

DiffusionExtrema Scheme1D::diffusion_extrema(const Velocity& u) const {
  DiffusionExtrema e;
  for (int j = 0; j < mesh_.n_cells(); ++j) {
    const auto ug = kNodal.to_gauss(u[0][j]);
    for (int g = 0; g < 2; ++g) e.d_max = std::max(e.d_max, dispersion(ug[g], phig_[j][g]));
  }
  for (int k = 0; k <= mesh_.n_cells(); ++k) {
    const Trace d = diffusion_trace(u, k);
    e.d_max = std::max({e.d_max, d.minus, d.plus});
  }
  e.d11 = e.d22 = e.d_max;
  return e;
}

}  // namespace bpdg
