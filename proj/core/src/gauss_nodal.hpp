#ifndef BPDG_SRC_GAUSS_NODAL_HPP_
#define BPDG_SRC_GAUSS_NODAL_HPP_

#include <array>
#include <cmath>

// Corner <-> Gauss-point maps for P1/Q1 with the tensor two-point rule.
//
// With B_gk = N_k(x_g) the corner-to-Gauss evaluation matrix, the quadrature
// mass matrix weighted by W is  M = |K| B^T diag(w_g W_g) B.  B is symmetric
// and invertible, so  M^{-1} f = B^{-1} diag(1 / (|K| w_g W_g)) B^{-1} f,
// which is the exact solve of the weighted mass system.

namespace bpdg::detail {

struct GaussNodal1D {
  double mu1;
  double mu2;
  double inv_a;  // B^{-1} = [[inv_a, inv_b], [inv_b, inv_a]]
  double inv_b;

  GaussNodal1D() {
    const double r3 = std::sqrt(3.0);
    mu1 = (3.0 + r3) / 6.0;
    mu2 = (3.0 - r3) / 6.0;
    inv_a = r3 * mu1;
    inv_b = -r3 * mu2;
  }

  std::array<double, 2> to_gauss(const std::array<double, 2>& v) const {
    return {mu1 * v[0] + mu2 * v[1], mu2 * v[0] + mu1 * v[1]};
  }

  std::array<double, 2> to_corners(const std::array<double, 2>& g) const {
    return {inv_a * g[0] + inv_b * g[1], inv_b * g[0] + inv_a * g[1]};
  }

  /// Solve (sum_g measure w_g W_g N_k N_l) x = f for the corner values x.
  std::array<double, 2> mass_solve(const std::array<double, 2>& f,
                                   const std::array<double, 2>& weight,
                                   double measure) const {
    auto g = to_corners(f);
    g[0] /= 0.5 * measure * weight[0];
    g[1] /= 0.5 * measure * weight[1];
    return to_corners(g);
  }

  /// Test-function sums sum_g w_g s_g N_k(x_g), times the cell measure.
  std::array<double, 2> moments(const std::array<double, 2>& s, double measure) const {
    auto m = to_gauss(s);  // B symmetric: B^T s == B s
    m[0] *= 0.5 * measure;
    m[1] *= 0.5 * measure;
    return m;
  }
};

struct GaussNodal2D {
  GaussNodal1D line;

  template <class Op>
  static std::array<double, 4> tensor(const Op& op, const std::array<double, 4>& v) {
    // Apply op along x (corner pairs 0-1 and 2-3) then along y (0-2, 1-3).
    const auto b0 = op({v[0], v[1]});
    const auto b1 = op({v[2], v[3]});
    const auto c0 = op({b0[0], b1[0]});
    const auto c1 = op({b0[1], b1[1]});
    return {c0[0], c1[0], c0[1], c1[1]};
  }

  std::array<double, 4> to_gauss(const std::array<double, 4>& v) const {
    return tensor([this](const std::array<double, 2>& p) { return line.to_gauss(p); }, v);
  }

  std::array<double, 4> to_corners(const std::array<double, 4>& g) const {
    return tensor([this](const std::array<double, 2>& p) { return line.to_corners(p); }, g);
  }

  std::array<double, 4> mass_solve(const std::array<double, 4>& f,
                                   const std::array<double, 4>& weight,
                                   double measure) const {
    auto g = to_corners(f);
    for (int i = 0; i < 4; ++i) g[i] /= 0.25 * measure * weight[i];
    return to_corners(g);
  }

  std::array<double, 4> moments(const std::array<double, 4>& s, double measure) const {
    auto m = to_gauss(s);
    for (double& v : m) v *= 0.25 * measure;
    return m;
  }
};

}  // namespace bpdg::detail

#endif  // BPDG_SRC_GAUSS_NODAL_HPP_
