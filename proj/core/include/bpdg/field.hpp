#ifndef BPDG_FIELD_HPP_
#define BPDG_FIELD_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <span>
#include <type_traits>
#include <vector>

#include "bpdg/mesh.hpp"

namespace bpdg {

template <int Dim>
inline constexpr int kCorners = 1 << Dim;

template <int Dim>
using Corners = std::array<double, kCorners<Dim>>;

template <int Dim>
using MeshFor = std::conditional_t<Dim == 1, Mesh1D, Mesh2D>;

/// Linear Lagrange pair on [-1/2, 1/2]: {value at -1/2, value at +1/2}.
inline std::array<double, 2> hat_1d(double xi) { return {0.5 - xi, 0.5 + xi}; }

/// Q1 shape functions on the reference square. Corner k = ix + 2 * iy,
/// so 0 = lower-left, 1 = lower-right, 2 = upper-left, 3 = upper-right.
inline std::array<double, 4> hat_2d(double xi, double eta) {
  const auto hx = hat_1d(xi);
  const auto hy = hat_1d(eta);
  return {hx[0] * hy[0], hx[1] * hy[0], hx[0] * hy[1], hx[1] * hy[1]};
}

/// Piecewise P1 (1D) / Q1 (2D) discontinuous field stored by the values
/// at the corners of every cell. Neighbouring cells keep separate copies
/// of shared corners, so the field may jump across interfaces.
template <int Dim>
class DGField {
 public:
  using CellValues = Corners<Dim>;

  DGField() = default;
  explicit DGField(int n_cells, double fill = 0.0)
      : data_(static_cast<std::size_t>(n_cells), filled(fill)) {}

  int n_cells() const { return static_cast<int>(data_.size()); }

  CellValues& operator[](int cell) { return data_[static_cast<std::size_t>(cell)]; }
  const CellValues& operator[](int cell) const {
    return data_[static_cast<std::size_t>(cell)];
  }

  std::span<CellValues> cells() { return data_; }
  std::span<const CellValues> cells() const { return data_; }

  double value(int cell, double xi) const
    requires(Dim == 1)
  {
    const auto h = hat_1d(xi);
    const auto& v = (*this)[cell];
    return h[0] * v[0] + h[1] * v[1];
  }

  double value(int cell, double xi, double eta) const
    requires(Dim == 2)
  {
    const auto h = hat_2d(xi, eta);
    const auto& v = (*this)[cell];
    return h[0] * v[0] + h[1] * v[1] + h[2] * v[2] + h[3] * v[3];
  }

  DGField& operator+=(const DGField& o) { return axpy(1.0, o); }

  DGField& operator*=(double s) {
    for (auto& c : data_) {
      for (auto& v : c) v *= s;
    }
    return *this;
  }

  /// this += a * x
  DGField& axpy(double a, const DGField& x) {
    for (std::size_t i = 0; i < data_.size(); ++i) {
      for (int k = 0; k < kCorners<Dim>; ++k) data_[i][k] += a * x.data_[i][k];
    }
    return *this;
  }

  double min_corner() const {
    double m = data_.empty() ? 0.0 : data_[0][0];
    for (const auto& c : data_) m = std::min(m, *std::min_element(c.begin(), c.end()));
    return m;
  }

  double max_corner() const {
    double m = data_.empty() ? 0.0 : data_[0][0];
    for (const auto& c : data_) m = std::max(m, *std::max_element(c.begin(), c.end()));
    return m;
  }

  bool all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const CellValues& c) {
      return std::all_of(c.begin(), c.end(), [](double v) { return std::isfinite(v); });
    });
  }

  friend bool operator==(const DGField&, const DGField&) = default;

 private:
  static CellValues filled(double v) {
    CellValues c;
    c.fill(v);
    return c;
  }

  std::vector<CellValues> data_;
};

using Field1D = DGField<1>;
using Field2D = DGField<2>;

/// a * x + b * y, cell by cell.
template <int Dim>
DGField<Dim> lincomb(double a, const DGField<Dim>& x, double b, const DGField<Dim>& y) {
  DGField<Dim> out = x;
  out *= a;
  out.axpy(b, y);
  return out;
}

/// Mean of the corner values; the exact cell average of a P1/Q1 polynomial.
template <std::size_t N>
double cell_average(const std::array<double, N>& corners) {
  double s = 0.0;
  for (double v : corners) s += v;
  return s / static_cast<double>(N);
}

template <int Dim>
double cell_average(const DGField<Dim>& v, int cell) {
  return cell_average(v[cell]);
}

using ScalarFunction = std::function<double(Point)>;

/// Corner interpolation: every cell receives f sampled at its own corners.
/// The result is continuous because neighbouring cells sample the same nodes.
Field1D interpolate_corners(const ScalarFunction& f, const Mesh1D& mesh);
Field2D interpolate_corners(const ScalarFunction& f, const Mesh2D& mesh);

/// Physical coordinates of the corners of a cell, in corner order.
std::array<Point, 2> cell_corners(const Mesh1D& mesh, int cell);
std::array<Point, 4> cell_corners(const Mesh2D& mesh, int cell);

/// Continuous corner interpolant Phi of the porosity, positive everywhere.
template <int Dim>
class PorosityInterpolant {
 public:
  PorosityInterpolant(const ScalarFunction& porosity, const MeshFor<Dim>& mesh);

  const DGField<Dim>& field() const { return phi_; }
  const Corners<Dim>& operator[](int cell) const { return phi_[cell]; }
  double min_corner() const { return phi_.min_corner(); }

 private:
  DGField<Dim> phi_;
};

/// c = I1{r / Phi}: corner-wise division. Throws if Phi <= 0 at a corner.
template <int Dim>
DGField<Dim> concentration_from_r(const DGField<Dim>& r, const PorosityInterpolant<Dim>& phi);

/// One-sided limits at an interface: minus from the left/below cell, plus
/// from the right/above cell. A boundary edge has its outside trace set to 0.
struct Trace {
  double minus = 0.0;
  double plus = 0.0;

  double jump() const { return plus - minus; }
  double average() const { return 0.5 * (plus + minus); }
};

/// Traces at interface x_{k+1/2}, k = 0..n.
Trace traces(const Field1D& v, const Mesh1D& mesh, int interface);

/// Traces on an edge at reference position s in [-1/2, 1/2] along it.
Trace traces(const Field2D& v, const Mesh2D& mesh, int edge, double s);

}  // namespace bpdg

#endif  // BPDG_FIELD_HPP_
