#include "bpdg/field.hpp"

#include <stdexcept>
#include <string>

namespace bpdg {

namespace {

double sample(const ScalarFunction& f, Point p) {
  const double v = f(p);
  if (!std::isfinite(v)) {
    throw std::domain_error("non-finite sample at (" + std::to_string(p.x) + ", " +
                            std::to_string(p.y) + ")");
  }
  return v;
}

}  // namespace

std::array<Point, 2> cell_corners(const Mesh1D& mesh, int cell) {
  return {Point{mesh.interface(cell), 0.0}, Point{mesh.interface(cell + 1), 0.0}};
}

std::array<Point, 4> cell_corners(const Mesh2D& mesh, int cell) {
  const int i = mesh.cell_i(cell);
  const int j = mesh.cell_j(cell);
  const double x0 = mesh.x_interface(i), x1 = mesh.x_interface(i + 1);
  const double y0 = mesh.y_interface(j), y1 = mesh.y_interface(j + 1);
  return {Point{x0, y0}, Point{x1, y0}, Point{x0, y1}, Point{x1, y1}};
}

Field1D interpolate_corners(const ScalarFunction& f, const Mesh1D& mesh) {
  // Sample each grid node once so shared corners are bitwise equal.
  std::vector<double> nodes(static_cast<std::size_t>(mesh.n_interfaces()));
  for (int k = 0; k < mesh.n_interfaces(); ++k) {
    nodes[static_cast<std::size_t>(k)] = sample(f, {mesh.interface(k), 0.0});
  }
  Field1D out(mesh.n_cells());
  for (int j = 0; j < mesh.n_cells(); ++j) {
    out[j] = {nodes[static_cast<std::size_t>(j)], nodes[static_cast<std::size_t>(j + 1)]};
  }
  return out;
}

Field2D interpolate_corners(const ScalarFunction& f, const Mesh2D& mesh) {
  const int nxp = mesh.nx() + 1;
  std::vector<double> nodes(static_cast<std::size_t>(nxp * (mesh.ny() + 1)));
  for (int j = 0; j <= mesh.ny(); ++j) {
    for (int i = 0; i < nxp; ++i) {
      nodes[static_cast<std::size_t>(i + nxp * j)] =
          sample(f, {mesh.x_interface(i), mesh.y_interface(j)});
    }
  }
  auto node = [&](int i, int j) { return nodes[static_cast<std::size_t>(i + nxp * j)]; };
  Field2D out(mesh.n_cells());
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    const int i = mesh.cell_i(cell);
    const int j = mesh.cell_j(cell);
    out[cell] = {node(i, j), node(i + 1, j), node(i, j + 1), node(i + 1, j + 1)};
  }
  return out;
}

template <int Dim>
PorosityInterpolant<Dim>::PorosityInterpolant(const ScalarFunction& porosity,
                                              const MeshFor<Dim>& mesh)
    : phi_(interpolate_corners(porosity, mesh)) {
  if (!(phi_.min_corner() > 0.0)) {
    throw std::invalid_argument("porosity must be positive at every grid node");
  }
}

template <int Dim>
DGField<Dim> concentration_from_r(const DGField<Dim>& r, const PorosityInterpolant<Dim>& phi) {
  DGField<Dim> c(r.n_cells());
  for (int cell = 0; cell < r.n_cells(); ++cell) {
    const auto& pc = phi[cell];
    for (int k = 0; k < kCorners<Dim>; ++k) {
      if (!(pc[k] > 0.0)) {
        throw std::invalid_argument("porosity interpolant not positive in cell " +
                                    std::to_string(cell));
      }
      c[cell][k] = r[cell][k] / pc[k];
    }
  }
  return c;
}

template class PorosityInterpolant<1>;
template class PorosityInterpolant<2>;
template Field1D concentration_from_r(const Field1D&, const PorosityInterpolant<1>&);
template Field2D concentration_from_r(const Field2D&, const PorosityInterpolant<2>&);

Trace traces(const Field1D& v, const Mesh1D& mesh, int interface) {
  Trace t;
  if (interface > 0) t.minus = v[interface - 1][1];
  if (interface < mesh.n_cells()) t.plus = v[interface][0];
  return t;
}

Trace traces(const Field2D& v, const Mesh2D& mesh, int edge, double s) {
  const Edge& e = mesh.edges()[static_cast<std::size_t>(edge)];
  Trace t;
  if (e.normal == Axis::X) {
    if (e.minus_cell >= 0) t.minus = v.value(e.minus_cell, 0.5, s);
    if (e.plus_cell >= 0) t.plus = v.value(e.plus_cell, -0.5, s);
  } else {
    if (e.minus_cell >= 0) t.minus = v.value(e.minus_cell, s, 0.5);
    if (e.plus_cell >= 0) t.plus = v.value(e.plus_cell, s, -0.5);
  }
  return t;
}

}  // namespace bpdg
