#ifndef BPDG_MESH_HPP_
#define BPDG_MESH_HPP_

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace bpdg {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Interval {
  double lo = 0.0;
  double hi = kTwoPi;
  double length() const { return hi - lo; }
};

struct Rect {
  Interval x;
  Interval y;
};

/// A point of the physical domain. One-dimensional code leaves y at zero.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Two-point Gauss-Legendre rule on the reference interval [-1/2, 1/2].
struct GaussRule2 {
  std::array<double, 2> points;
  std::array<double, 2> weights;

  /// Trace weights: a linear function sampled at the first Gauss point equals
  /// mu1 * v(-1/2) + mu2 * v(+1/2); the second point swaps the roles.
  double mu1;
  double mu2;

  /// Sum of w_i f(points[i]); approximates the integral over [-1/2, 1/2].
  template <class F>
  double integrate(F&& f) const {
    return weights[0] * f(points[0]) + weights[1] * f(points[1]);
  }
};

GaussRule2 gauss2();

/// Uniform partition of an interval into cells I_j = (x_{j-1/2}, x_{j+1/2}).
class Mesh1D {
 public:
  static constexpr int kDim = 1;

  Mesh1D(int n_cells, Interval domain);

  int n_cells() const { return n_; }
  int n_interfaces() const { return n_ + 1; }
  double dx() const { return dx_; }
  const Interval& domain() const { return domain_; }

  /// x_{k+1/2} for k = 0..n; interface 0 is the "-" boundary, n the "+" one.
  double interface(int k) const { return domain_.lo + k * dx_; }
  double cell_center(int j) const { return domain_.lo + (j + 0.5) * dx_; }
  double cell_measure() const { return dx_; }

  /// Physical position of reference coordinate xi in [-1/2, 1/2] of cell j.
  double map(int j, double xi) const { return cell_center(j) + xi * dx_; }

  bool is_boundary_interface(int k) const { return k == 0 || k == n_; }

 private:
  int n_;
  Interval domain_;
  double dx_;
};

enum class Axis { X = 0, Y = 1 };

/// Boundary classification: an edge on the boundary is "+" when its
/// orientation normal n_e points outward and "-" otherwise.
enum class EdgeKind { Interior, BoundaryPlus, BoundaryMinus };

/// One cell interface of a tensor grid. The minus cell lies on the side
/// opposite to n_e, the plus cell on the side n_e points to; -1 marks
/// the missing neighbour of a boundary edge.
struct Edge {
  Axis normal;
  EdgeKind kind;
  int minus_cell;
  int plus_cell;
  double length;
  Point a;  // endpoints, ordered along the edge
  Point b;
};

/// Uniform tensor-product grid with cells K_ij = I_i x J_j, cell index
/// i + nx * j. Edges normal to x come first (index i + (nx+1) * j with
/// i = 0..nx), followed by edges normal to y (index i + nx * j, j = 0..ny).
class Mesh2D {
 public:
  static constexpr int kDim = 2;

  Mesh2D(int nx, int ny, Rect domain);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int n_cells() const { return nx_ * ny_; }
  double dx() const { return dx_; }
  double dy() const { return dy_; }
  const Rect& domain() const { return domain_; }
  double cell_measure() const { return dx_ * dy_; }

  int cell_index(int i, int j) const { return i + nx_ * j; }
  int cell_i(int cell) const { return cell % nx_; }
  int cell_j(int cell) const { return cell / nx_; }

  double x_interface(int i) const { return domain_.x.lo + i * dx_; }
  double y_interface(int j) const { return domain_.y.lo + j * dy_; }
  Point cell_center(int cell) const;
  Point map(int cell, double xi, double eta) const;

  const std::vector<Edge>& edges() const { return edges_; }
  int x_edge_index(int i, int j) const { return i + (nx_ + 1) * j; }
  int y_edge_index(int i, int j) const {
    return (nx_ + 1) * ny_ + i + nx_ * j;
  }

 private:
  int nx_;
  int ny_;
  Rect domain_;
  double dx_;
  double dy_;
  std::vector<Edge> edges_;
};

Mesh1D build_mesh_1d(int n, Interval domain = {});
Mesh2D build_mesh_2d(int nx, int ny, Rect domain = {});

}  // namespace bpdg

#endif  // BPDG_MESH_HPP_
