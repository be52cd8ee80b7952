#ifndef BPDG_LIMITER_HPP_
#define BPDG_LIMITER_HPP_

#include <array>
#include <stdexcept>

#include "bpdg/field.hpp"

namespace bpdg {

/// Raised when a cell average lies outside [0, Phi-bar] by more than the
/// configured roundoff tolerance, i.e. the time-step conditions were broken.
class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LimiterConfig {
  double epsilon = 1e-13;
  bool enabled = true;
  /// Cell averages this far outside [0, Phi-bar] are clamped back as
  /// roundoff; anything further raises BoundViolation.
  double average_tolerance = 1e-10;
};

/// Endpoint limiter for one P1 cell. r and phi are {left, right} values.
std::array<double, 2> limit_cell_1d(const std::array<double, 2>& r,
                                    const std::array<double, 2>& phi, const LimiterConfig& cfg);

/// Corner-scaling limiter for one Q1 cell.
std::array<double, 4> limit_cell_2d(const std::array<double, 4>& r,
                                    const std::array<double, 4>& phi, const LimiterConfig& cfg);

/// Applies the cell limiter everywhere. A no-op when cfg.enabled is false.
/// BoundViolation messages carry the offending cell index.
Field1D limit_field(const Field1D& r, const PorosityInterpolant<1>& phi, const LimiterConfig& cfg);
Field2D limit_field(const Field2D& r, const PorosityInterpolant<2>& phi, const LimiterConfig& cfg);

}  // namespace bpdg

#endif  // BPDG_LIMITER_HPP_
