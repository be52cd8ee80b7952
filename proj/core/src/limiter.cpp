#include "bpdg/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bpdg {

namespace {

template <std::size_t N>
bool in_bounds(const std::array<double, N>& r, const std::array<double, N>& phi) {
  for (std::size_t k = 0; k < N; ++k) {
    if (!(r[k] >= 0.0 && r[k] <= phi[k])) return false;
  }
  return true;
}

template <std::size_t N>
double mean(const std::array<double, N>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(N);
}

/// Checks 0 <= r-bar <= Phi-bar and absorbs roundoff-sized excursions by
/// shifting all corners. Returns the (possibly shifted) average.
template <std::size_t N>
double admissible_average(std::array<double, N>& r, const std::array<double, N>& phi,
                          const LimiterConfig& cfg) {
  const double rbar = mean(r);
  const double phibar = mean(phi);
  const double tol = cfg.average_tolerance * (1.0 + phibar);
  if (!std::isfinite(rbar) || rbar < -tol || rbar > phibar + tol) {
    throw BoundViolation("cell average " + std::to_string(rbar) + " outside [0, " +
                         std::to_string(phibar) + "]");
  }
  const double clamped = std::clamp(rbar, 0.0, phibar);
  if (clamped != rbar) {
    for (double& v : r) v += clamped - rbar;
  }
  return clamped;
}

template <std::size_t N>
void clamp_to(std::array<double, N>& r, const std::array<double, N>& phi) {
  for (std::size_t k = 0; k < N; ++k) r[k] = std::clamp(r[k], 0.0, phi[k]);
}

// One endpoint pass of the 1D procedure on a generic nonnegative target.
void lift_negative_endpoint(std::array<double, 2>& v, double eps) {
  if (v[0] < 0.0 && v[1] < 0.0) {
    throw std::logic_error("both endpoints negative with a positive average");
  }
  if (v[0] < 0.0) {
    v = {eps, v[1] - eps + v[0]};
  } else if (v[1] < 0.0) {
    v = {v[0] - eps + v[1], eps};
  }
}

// Zero the negative corners and rescale the positive ones to keep the mean.
void scale_positive(std::array<double, 4>& v, double vbar) {
  double pos = 0.0;
  bool any_negative = false;
  for (double x : v) {
    if (x > 0.0) pos += x;
    if (x < 0.0) any_negative = true;
  }
  if (!any_negative) return;
  if (!(pos > 0.0)) throw BoundViolation("no positive corner to carry a positive average");
  const double s = 4.0 * vbar / pos;
  for (double& x : v) x = x < 0.0 ? 0.0 : s * x;
}

}  // namespace

std::array<double, 2> limit_cell_1d(const std::array<double, 2>& r_in,
                                    const std::array<double, 2>& phi, const LimiterConfig& cfg) {
  if (in_bounds(r_in, phi)) return r_in;
  std::array<double, 2> r = r_in;
  const double rbar = admissible_average(r, phi, cfg);
  const double r2bar = mean(phi) - rbar;
  if (rbar <= cfg.epsilon) return {rbar, rbar};
  if (r2bar <= cfg.epsilon) return {phi[0] - r2bar, phi[1] - r2bar};

  lift_negative_endpoint(r, cfg.epsilon);
  std::array<double, 2> r2{phi[0] - r[0], phi[1] - r[1]};
  lift_negative_endpoint(r2, cfg.epsilon);
  r = {phi[0] - r2[0], phi[1] - r2[1]};
  clamp_to(r, phi);
  return r;
}

std::array<double, 4> limit_cell_2d(const std::array<double, 4>& r_in,
                                    const std::array<double, 4>& phi, const LimiterConfig& cfg) {
  if (in_bounds(r_in, phi)) return r_in;
  std::array<double, 4> r = r_in;
  const double rbar = admissible_average(r, phi, cfg);
  const double r2bar = mean(phi) - rbar;
  if (rbar <= cfg.epsilon) return {rbar, rbar, rbar, rbar};
  if (r2bar <= cfg.epsilon) {
    return {phi[0] - r2bar, phi[1] - r2bar, phi[2] - r2bar, phi[3] - r2bar};
  }

  scale_positive(r, rbar);
  std::array<double, 4> r2{};
  for (int k = 0; k < 4; ++k) r2[k] = phi[k] - r[k];
  scale_positive(r2, r2bar);
  for (int k = 0; k < 4; ++k) r[k] = phi[k] - r2[k];
  clamp_to(r, phi);
  return r;
}

namespace {

template <int Dim, class CellOp>
DGField<Dim> limit_all(const DGField<Dim>& r, const PorosityInterpolant<Dim>& phi,
                       const LimiterConfig& cfg, CellOp op) {
  if (!cfg.enabled) return r;
  DGField<Dim> out = r;
  for (int cell = 0; cell < r.n_cells(); ++cell) {
    try {
      out[cell] = op(r[cell], phi[cell], cfg);
    } catch (const BoundViolation& e) {
      throw BoundViolation("cell " + std::to_string(cell) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

Field1D limit_field(const Field1D& r, const PorosityInterpolant<1>& phi, const LimiterConfig& cfg) {
  return limit_all<1>(r, phi, cfg, limit_cell_1d);
}

Field2D limit_field(const Field2D& r, const PorosityInterpolant<2>& phi, const LimiterConfig& cfg) {
  return limit_all<2>(r, phi, cfg, limit_cell_2d);
}

}  // namespace bpdg
