#include "bpdg/mesh.hpp"

#include <stdexcept>
#include <string>

namespace bpdg {

namespace {

constexpr int kMinCells = 4;

void check_interval(const Interval& d, const char* what) {
  if (!(d.hi > d.lo) || !std::isfinite(d.lo) || !std::isfinite(d.hi)) {
    throw std::invalid_argument(std::string("empty or invalid ") + what +
                                " domain");
  }
}

}  // namespace

GaussRule2 gauss2() {
  const double s = 1.0 / (2.0 * std::sqrt(3.0));
  const double r3 = std::sqrt(3.0);
  return GaussRule2{{-s, s}, {0.5, 0.5}, (3.0 + r3) / 6.0, (3.0 - r3) / 6.0};
}

Mesh1D::Mesh1D(int n_cells, Interval domain)
    : n_(n_cells), domain_(domain), dx_(0.0) {
  if (n_cells < kMinCells) {
    throw std::invalid_argument("1D mesh needs at least 4 cells, got " +
                                std::to_string(n_cells));
  }
  check_interval(domain, "1D");
  dx_ = domain.length() / n_cells;
}

Mesh2D::Mesh2D(int nx, int ny, Rect domain)
    : nx_(nx), ny_(ny), domain_(domain), dx_(0.0), dy_(0.0) {
  if (nx < kMinCells || ny < kMinCells) {
    throw std::invalid_argument("2D mesh needs at least 4x4 cells, got " +
                                std::to_string(nx) + "x" + std::to_string(ny));
  }
  check_interval(domain.x, "x");
  check_interval(domain.y, "y");
  dx_ = domain.x.length() / nx;
  dy_ = domain.y.length() / ny;

  edges_.reserve(static_cast<std::size_t>((nx + 1) * ny + nx * (ny + 1)));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      Edge e{};
      e.normal = Axis::X;
      e.minus_cell = i > 0 ? cell_index(i - 1, j) : -1;
      e.plus_cell = i < nx ? cell_index(i, j) : -1;
      e.kind = i == 0    ? EdgeKind::BoundaryMinus
               : i == nx ? EdgeKind::BoundaryPlus
                         : EdgeKind::Interior;
      e.length = dy_;
      e.a = {x_interface(i), y_interface(j)};
      e.b = {x_interface(i), y_interface(j + 1)};
      edges_.push_back(e);
    }
  }
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Edge e{};
      e.normal = Axis::Y;
      e.minus_cell = j > 0 ? cell_index(i, j - 1) : -1;
      e.plus_cell = j < ny ? cell_index(i, j) : -1;
      e.kind = j == 0    ? EdgeKind::BoundaryMinus
               : j == ny ? EdgeKind::BoundaryPlus
                         : EdgeKind::Interior;
      e.length = dx_;
      e.a = {x_interface(i), y_interface(j)};
      e.b = {x_interface(i + 1), y_interface(j)};
      edges_.push_back(e);
    }
  }
}

Point Mesh2D::cell_center(int cell) const {
  return {domain_.x.lo + (cell_i(cell) + 0.5) * dx_,
          domain_.y.lo + (cell_j(cell) + 0.5) * dy_};
}

Point Mesh2D::map(int cell, double xi, double eta) const {
  const Point c = cell_center(cell);
  return {c.x + xi * dx_, c.y + eta * dy_};
}

Mesh1D build_mesh_1d(int n, Interval domain) { return Mesh1D(n, domain); }

Mesh2D build_mesh_2d(int nx, int ny, Rect domain) {
  return Mesh2D(nx, ny, domain);
}

}  // namespace bpdg
