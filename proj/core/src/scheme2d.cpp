#include <algorithm>
#include <cmath>
#include <string>

#include "bpdg/scheme.hpp"
#include "gauss_nodal.hpp"

namespace bpdg {

namespace {

const detail::GaussNodal2D kNodal;

double gauss_point(int beta) { return gauss2().points[beta]; }

/// Gradient of the Q1 shape functions at a reference point.
std::array<std::array<double, 2>, 4> shape_gradients(double xi, double eta, double dx,
                                                     double dy) {
  const auto lx = hat_1d(xi);
  const auto ly = hat_1d(eta);
  std::array<std::array<double, 2>, 4> g{};
  for (int k = 0; k < 4; ++k) {
    const int ix = k & 1;
    const int iy = k >> 1;
    g[k] = {(ix ? 1.0 : -1.0) / dx * ly[iy], lx[ix] * (iy ? 1.0 : -1.0) / dy};
  }
  return g;
}

/// One side of a cell: the edge it lies on and whether the cell is that
/// edge's plus cell (left and bottom sides) or minus cell.
struct Side {
  int edge;
  bool plus_side;
};

std::array<Side, 4> sides_of(const Mesh2D& m, int cell) {
  const int i = m.cell_i(cell);
  const int j = m.cell_j(cell);
  return {Side{m.x_edge_index(i, j), true}, Side{m.x_edge_index(i + 1, j), false},
          Side{m.y_edge_index(i, j), true}, Side{m.y_edge_index(i, j + 1), false}};
}

Point edge_node(const Edge& e, int beta) {
  const double t = gauss_point(beta) + 0.5;
  return {e.a.x + t * (e.b.x - e.a.x), e.a.y + t * (e.b.y - e.a.y)};
}

}  // namespace

std::array<double, 2> Scheme2D::edge_point(Axis normal, bool plus_side, int beta) {
  const double s = gauss_point(beta);
  const double side = plus_side ? -0.5 : 0.5;
  return normal == Axis::X ? std::array<double, 2>{side, s} : std::array<double, 2>{s, side};
}

Scheme2D::Scheme2D(Mesh2D mesh, ProblemSpec spec, FluxPair flux)
    : mesh_(std::move(mesh)), spec_(std::move(spec)), flux_(flux), phi_(spec_.porosity, mesh_) {
  spec_.validate();
  const int n = mesh_.n_cells();
  const auto rule = gauss2();
  xg_.resize(static_cast<std::size_t>(n));
  phig_.resize(static_cast<std::size_t>(n));
  kappag_.resize(static_cast<std::size_t>(n));
  for (int cell = 0; cell < n; ++cell) {
    for (int g = 0; g < 4; ++g) {
      const Point x = mesh_.map(cell, rule.points[g & 1], rule.points[g >> 1]);
      xg_[cell][g] = x;
      phig_[cell][g] = spec_.porosity(x);
      kappag_[cell][g] = spec_.permeability(x);
      if (!(kappag_[cell][g] > 0.0)) {
        throw std::invalid_argument("permeability must be positive");
      }
    }
  }
  const auto& edges = mesh_.edges();
  phi_edge_.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (int b = 0; b < 2; ++b) phi_edge_[e][b] = spec_.porosity(edge_node(edges[e], b));
  }

  well_density_.assign(static_cast<std::size_t>(n), 0.0);
  well_injected_.assign(static_cast<std::size_t>(n), 0.0);
  const Rect& d = mesh_.domain();
  for (const Well& w : spec_.wells) {
    const int i = std::clamp(
        static_cast<int>(std::floor((w.location.x - d.x.lo) / mesh_.dx())), 0, mesh_.nx() - 1);
    const int j = std::clamp(
        static_cast<int>(std::floor((w.location.y - d.y.lo) / mesh_.dy())), 0, mesh_.ny() - 1);
    const int cell = mesh_.cell_index(i, j);
    well_density_[cell] += w.rate / mesh_.cell_measure();
    if (w.rate > 0.0) well_injected_[cell] = w.injected_concentration;
  }
}

State2D Scheme2D::initial_state() const {
  State2D s;
  s.p = interpolate_corners(spec_.initial_pressure, mesh_);
  const Field2D c0 = interpolate_corners(spec_.initial_concentration, mesh_);
  s.r = Field2D(mesh_.n_cells());
  for (int cell = 0; cell < mesh_.n_cells(); ++cell) {
    for (int k = 0; k < 4; ++k) s.r[cell][k] = phi_[cell][k] * c0[cell][k];
  }
  return s;
}

Field2D Scheme2D::concentration(const State2D& s) const { return concentration_from_r(s.r, phi_); }

std::array<double, 4> Scheme2D::gauss_values(const Field2D& f, int cell) const {
  return kNodal.to_gauss(f[cell]);
}

double Scheme2D::source_rate(int cell, int g, double t) const {
  return spec_.source(xg_[cell][g], t) + well_density_[cell];
}

std::array<double, 2> Scheme2D::velocity_at(const Velocity& u, int cell, double xi,
                                            double eta) const {
  return {u[0].value(cell, xi, eta), u[1].value(cell, xi, eta)};
}

DiffusionTensor Scheme2D::dispersion(const std::array<double, 2>& u, double phi) const {
  const double norm2 = u[0] * u[0] + u[1] * u[1];
  DiffusionTensor d{phi * spec_.d_mol, 0.0, 0.0, phi * spec_.d_mol};
  if (norm2 == 0.0) return d;
  const double norm = std::sqrt(norm2);
  const double e11 = u[0] * u[0] / norm2;
  const double e12 = u[0] * u[1] / norm2;
  const double e22 = u[1] * u[1] / norm2;
  const double l = phi * spec_.d_long * norm;
  const double t = phi * spec_.d_tran * norm;
  d.d11 += l * e11 + t * (1.0 - e11);
  d.d12 += (l - t) * e12;
  d.d21 = d.d12;
  d.d22 += l * e22 + t * (1.0 - e22);
  return d;
}

std::array<double, 2> Scheme2D::gradient(const Field2D& f, int cell, double xi,
                                         double eta) const {
  const auto& v = f[cell];
  return {((v[1] - v[0]) * (0.5 - eta) + (v[3] - v[2]) * (0.5 + eta)) / mesh_.dx(),
          ((v[2] - v[0]) * (0.5 - xi) + (v[3] - v[1]) * (0.5 + xi)) / mesh_.dy()};
}

Trace Scheme2D::velocity_trace(const Velocity& u, int edge, int beta) const {
  const Edge& e = mesh_.edges()[static_cast<std::size_t>(edge)];
  return traces(u[static_cast<int>(e.normal)], mesh_, edge, gauss_point(beta));
}

Scheme2D::Velocity Scheme2D::solve_velocity(const State2D& s, const Field2D& c) const {
  const auto& edges = mesh_.edges();
  std::vector<std::array<double, 2>> p_hat(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    for (int b = 0; b < 2; ++b) {
      const Trace t = traces(s.p, mesh_, static_cast<int>(e), gauss_point(b));
      // A boundary edge has one trace; the missing one reads as zero.
      p_hat[e][b] = edges[e].kind == EdgeKind::Interior ? flux_.pressure(t) : t.minus + t.plus;
    }
  }

  const int n = mesh_.n_cells();
  const double area = mesh_.cell_measure();
  const auto rule = gauss2();
  Velocity u{Field2D(n), Field2D(n)};
  for (int cell = 0; cell < n; ++cell) {
    const auto cg = kNodal.to_gauss(c[cell]);
    const auto pg = kNodal.to_gauss(s.p[cell]);
    std::array<double, 4> a{};
    std::array<double, 4> f1{}, f2{};
    for (int g = 0; g < 4; ++g) {
      a[g] = spec_.viscosity(cg[g]) / kappag_[cell][g];
      if (!(a[g] > 0.0) || !std::isfinite(a[g])) {
        throw SchemeBreakdown("a(c) not positive in cell " + std::to_string(cell));
      }
      const auto grad = shape_gradients(rule.points[g & 1], rule.points[g >> 1], mesh_.dx(),
                                        mesh_.dy());
      for (int k = 0; k < 4; ++k) {
        f1[k] += 0.25 * area * pg[g] * grad[k][0];
        f2[k] += 0.25 * area * pg[g] * grad[k][1];
      }
    }
    for (const Side& side : sides_of(mesh_, cell)) {
      const Edge& e = edges[static_cast<std::size_t>(side.edge)];
      auto& f = e.normal == Axis::X ? f1 : f2;
      const double sign = side.plus_side ? 1.0 : -1.0;
      for (int b = 0; b < 2; ++b) {
        const auto pt = edge_point(e.normal, side.plus_side, b);
        const auto nk = hat_2d(pt[0], pt[1]);
        const double wgt = sign * e.length * rule.weights[b] * p_hat[side.edge][b];
        for (int k = 0; k < 4; ++k) f[k] += wgt * nk[k];
      }
    }
    u[0][cell] = kNodal.mass_solve(f1, a, area);
    u[1][cell] = kNodal.mass_solve(f2, a, area);
  }
  return u;
}

Field2D Scheme2D::solve_pressure_rate(const State2D& s, const Velocity& u) const {
  const auto& edges = mesh_.edges();
  std::vector<std::array<double, 2>> u_hat(edges.size(), {0.0, 0.0});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].kind != EdgeKind::Interior) continue;
    for (int b = 0; b < 2; ++b) u_hat[e][b] = flux_.velocity(velocity_trace(u, static_cast<int>(e), b));
  }

  const int n = mesh_.n_cells();
  const double area = mesh_.cell_measure();
  const auto rule = gauss2();
  Field2D p_t(n);
  for (int cell = 0; cell < n; ++cell) {
    const auto rg = kNodal.to_gauss(s.r[cell]);
    const auto phig = kNodal.to_gauss(phi_[cell]);
    const auto u1 = kNodal.to_gauss(u[0][cell]);
    const auto u2 = kNodal.to_gauss(u[1][cell]);
    std::array<double, 4> w{}, q{}, f{};
    for (int g = 0; g < 4; ++g) {
      w[g] = coeff_d_tilde(spec_, rg[g], phig[g]);
      if (!(w[g] > 0.0) || !std::isfinite(w[g])) {
        throw SchemeBreakdown("d~(r) not positive in cell " + std::to_string(cell) + " (value " +
                              std::to_string(w[g]) + ")");
      }
      q[g] = source_rate(cell, g, s.t);
      const auto grad = shape_gradients(rule.points[g & 1], rule.points[g >> 1], mesh_.dx(),
                                        mesh_.dy());
      for (int k = 0; k < 4; ++k) f[k] += 0.25 * area * (u1[g] * grad[k][0] + u2[g] * grad[k][1]);
    }
    for (const Side& side : sides_of(mesh_, cell)) {
      const Edge& e = edges[static_cast<std::size_t>(side.edge)];
      if (e.kind != EdgeKind::Interior) continue;
      const double sign = side.plus_side ? 1.0 : -1.0;
      for (int b = 0; b < 2; ++b) {
        const auto pt = edge_point(e.normal, side.plus_side, b);
        const auto nk = hat_2d(pt[0], pt[1]);
        const double wgt = sign * e.length * rule.weights[b] * u_hat[side.edge][b];
        for (int k = 0; k < 4; ++k) f[k] += wgt * nk[k];
      }
    }
    const auto mq = kNodal.moments(q, area);
    for (int k = 0; k < 4; ++k) f[k] += mq[k];
    p_t[cell] = kNodal.mass_solve(f, w, area);
  }
  return p_t;
}

Scheme2D::Assembly Scheme2D::assemble(const State2D& s, const Field2D& c, const Velocity& u,
                                      const Field2D& p_t, const Penalties& pen) const {
  const auto& edges = mesh_.edges();
  Assembly out;
  out.edges.resize(edges.size());
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const Edge& e = edges[ei];
    if (e.kind != EdgeKind::Interior) continue;
    const int axis = static_cast<int>(e.normal);
    EdgeTerms& t = out.edges[ei];
    for (int b = 0; b < 2; ++b) {
      const auto pm = edge_point(e.normal, false, b);
      const auto pp = edge_point(e.normal, true, b);
      const auto um = velocity_at(u, e.minus_cell, pm[0], pm[1]);
      const auto up = velocity_at(u, e.plus_cell, pp[0], pp[1]);
      const DiffusionTensor dm = dispersion(um, phi_edge_[ei][b]);
      const DiffusionTensor dp = dispersion(up, phi_edge_[ei][b]);
      t.row_minus[b] = axis == 0 ? std::array<double, 2>{dm.d11, dm.d12}
                                 : std::array<double, 2>{dm.d21, dm.d22};
      t.row_plus[b] = axis == 0 ? std::array<double, 2>{dp.d11, dp.d12}
                                : std::array<double, 2>{dp.d21, dp.d22};
      const auto gm = gradient(c, e.minus_cell, pm[0], pm[1]);
      const auto gp = gradient(c, e.plus_cell, pp[0], pp[1]);
      const Trace ct{c.value(e.minus_cell, pm[0], pm[1]), c.value(e.plus_cell, pp[0], pp[1])};
      const Trace ut{um[axis], up[axis]};
      t.conv[b] = flux_.convection(ut, ct, pen.alpha);
      t.flux[b] = 0.5 * (t.row_minus[b][0] * gm[0] + t.row_minus[b][1] * gm[1] +
                         t.row_plus[b][0] * gp[0] + t.row_plus[b][1] * gp[1]);
      t.jump[b] = ct.jump();
    }
  }

  const int n = mesh_.n_cells();
  out.source.resize(static_cast<std::size_t>(n));
  for (int cell = 0; cell < n; ++cell) {
    const auto rg = kNodal.to_gauss(s.r[cell]);
    const auto cg = kNodal.to_gauss(c[cell]);
    const auto ptg = kNodal.to_gauss(p_t[cell]);
    for (int g = 0; g < 4; ++g) {
      const SourceSample src = source_terms(spec_, xg_[cell][g], s.t, cg[g], well_density_[cell],
                                            well_injected_[cell]);
      out.source[cell][g] = src.c_tilde * src.q - spec_.z1 * rg[g] * ptg[g];
    }
  }
  return out;
}

Field2D Scheme2D::concentration_rhs(const State2D& s, const Field2D& c, const Velocity& u,
                                    const Field2D& p_t, const Penalties& pen) const {
  const auto& edges = mesh_.edges();
  const Assembly as = assemble(s, c, u, p_t, pen);
  const int n = mesh_.n_cells();
  const double area = mesh_.cell_measure();
  const auto rule = gauss2();

  Field2D r_t(n);
  for (int cell = 0; cell < n; ++cell) {
    std::array<double, 4> f{};
    const auto cg = kNodal.to_gauss(c[cell]);
    for (int g = 0; g < 4; ++g) {
      const double xi = rule.points[g & 1];
      const double eta = rule.points[g >> 1];
      const auto ug = velocity_at(u, cell, xi, eta);
      const DiffusionTensor d = dispersion(ug, phig_[cell][g]);
      const auto gc = gradient(c, cell, xi, eta);
      const double fx = ug[0] * cg[g] - (d.d11 * gc[0] + d.d12 * gc[1]);
      const double fy = ug[1] * cg[g] - (d.d21 * gc[0] + d.d22 * gc[1]);
      const auto grad = shape_gradients(xi, eta, mesh_.dx(), mesh_.dy());
      for (int k = 0; k < 4; ++k) f[k] += 0.25 * area * (fx * grad[k][0] + fy * grad[k][1]);
    }
    for (const Side& side : sides_of(mesh_, cell)) {
      const Edge& e = edges[static_cast<std::size_t>(side.edge)];
      if (e.kind != EdgeKind::Interior) continue;
      const EdgeTerms& t = as.edges[static_cast<std::size_t>(side.edge)];
      const double sign = side.plus_side ? 1.0 : -1.0;
      const double pen_e = pen.alpha_tilde / e.length;
      for (int b = 0; b < 2; ++b) {
        const auto pt = edge_point(e.normal, side.plus_side, b);
        const auto nk = hat_2d(pt[0], pt[1]);
        const auto grad = shape_gradients(pt[0], pt[1], mesh_.dx(), mesh_.dy());
        const auto& row = side.plus_side ? t.row_plus[b] : t.row_minus[b];
        const double ds = e.length * rule.weights[b];
        const double face = t.conv[b] - t.flux[b] - pen_e * t.jump[b];
        for (int k = 0; k < 4; ++k) {
          const double dn = row[0] * grad[k][0] + row[1] * grad[k][1];
          f[k] += ds * (face * sign * nk[k] - 0.5 * dn * t.jump[b]);
        }
      }
    }
    const auto ms = kNodal.moments(as.source[cell], area);
    for (int k = 0; k < 4; ++k) f[k] += ms[k];
    r_t[cell] = kNodal.mass_solve(f, {1.0, 1.0, 1.0, 1.0}, area);
  }
  return r_t;
}

std::vector<Decomposition2D> Scheme2D::cell_average_decomposition(
    const State2D& s, const Field2D& c, const Velocity& u, const Field2D& p_t,
    const Penalties& pen, double dt) const {
  const auto& edges = mesh_.edges();
  const Assembly as = assemble(s, c, u, p_t, pen);
  const int n = mesh_.n_cells();
  const double lambda = dt / mesh_.cell_measure();
  const auto rule = gauss2();

  std::vector<Decomposition2D> out(static_cast<std::size_t>(n));
  for (int cell = 0; cell < n; ++cell) {
    double conv = 0.0, diff_x = 0.0, diff_y = 0.0;
    for (const Side& side : sides_of(mesh_, cell)) {
      const Edge& e = edges[static_cast<std::size_t>(side.edge)];
      if (e.kind != EdgeKind::Interior) continue;
      const EdgeTerms& t = as.edges[static_cast<std::size_t>(side.edge)];
      const double sign = side.plus_side ? 1.0 : -1.0;
      const double pen_e = pen.alpha_tilde / e.length;
      double fc = 0.0, fd = 0.0;
      for (int b = 0; b < 2; ++b) {
        const double ds = e.length * rule.weights[b];
        fc += ds * t.conv[b];
        fd += ds * (t.flux[b] + pen_e * t.jump[b]);
      }
      conv += sign * fc;
      (e.normal == Axis::X ? diff_x : diff_y) += sign * fd;
    }
    const double rbar = cell_average(s.r[cell]);
    const auto& src = as.source[cell];
    Decomposition2D& d = out[cell];
    d.convection = rbar / 3.0 + lambda * conv;
    d.diffusion_x = rbar / 6.0 - lambda * diff_x;
    d.diffusion_y = rbar / 6.0 - lambda * diff_y;
    d.source = rbar / 3.0 + dt * 0.25 * (src[0] + src[1] + src[2] + src[3]);
  }
  return out;
}

double Scheme2D::convection_penalty_floor(const Velocity& u) const {
  double m = 0.0;
  const double wp = flux_.plus_weight();
  const double wm = flux_.minus_weight();
  const auto& edges = mesh_.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].kind != EdgeKind::Interior) continue;
    for (int b = 0; b < 2; ++b) {
      const Trace ut = velocity_trace(u, static_cast<int>(e), b);
      m = std::max({m, wp * ut.plus, -wm * ut.minus});
    }
  }
  return m;
}

DiffusionExtrema Scheme2D::diffusion_extrema(const Velocity& u) const {
  DiffusionExtrema ex;
  auto take = [&ex](const DiffusionTensor& d) {
    ex.d11 = std::max(ex.d11, d.d11);
    ex.d22 = std::max(ex.d22, d.d22);
    ex.d12 = std::max(ex.d12, std::abs(d.d12));
    ex.d21 = std::max(ex.d21, std::abs(d.d21));
  };
  const auto rule = gauss2();
  for (int cell = 0; cell < mesh_.n_cells(); ++cell) {
    for (int g = 0; g < 4; ++g) {
      take(dispersion(velocity_at(u, cell, rule.points[g & 1], rule.points[g >> 1]),
                      phig_[cell][g]));
    }
  }
  const auto& edges = mesh_.edges();
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    const Edge& e = edges[ei];
    for (int b = 0; b < 2; ++b) {
      if (e.minus_cell >= 0) {
        const auto pt = edge_point(e.normal, false, b);
        take(dispersion(velocity_at(u, e.minus_cell, pt[0], pt[1]), phi_edge_[ei][b]));
      }
      if (e.plus_cell >= 0) {
        const auto pt = edge_point(e.normal, true, b);
        take(dispersion(velocity_at(u, e.plus_cell, pt[0], pt[1]), phi_edge_[ei][b]));
      }
    }
  }
  ex.d_max = std::max(ex.d11, ex.d22);
  return ex;
}

}  // namespace bpdg
