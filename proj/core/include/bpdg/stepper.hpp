#ifndef BPDG_STEPPER_HPP_
#define BPDG_STEPPER_HPP_

#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "bpdg/limiter.hpp"
#include "bpdg/scheme.hpp"

namespace bpdg {

enum class Integrator { Euler, SspRk3, SspMs3 };

std::string to_string(Integrator k);
Integrator parse_integrator(const std::string& s);  // euler | rk3 | ms3

/// Number of forward Euler step lengths one step of the integrator spends
/// on a single sub-update; the admissible step is the Euler bound over this.
double euler_step_multiplier(Integrator k);

/// Mesh ratios for one step of length dt.
struct StepParams {
  double dt = 0.0;
  double lambda_x = 0.0;      // dt / dx
  double lambda_y = 0.0;      // dt / dy (2D)
  double lambda_area = 0.0;   // dt / (dx dy) (2D)
  double Lambda_x = 0.0;      // dt / dx^2
  double Lambda_y = 0.0;      // dt / dy^2 (2D)

  static StepParams make(const Mesh1D& mesh, double dt);
  static StepParams make(const Mesh2D& mesh, double dt);
};

/// The largest bound-preserving forward Euler step, split by the term that
/// imposes it. Unconstrained parts are +infinity.
struct DtBound {
  double convection = std::numeric_limits<double>::infinity();
  double diffusion = std::numeric_limits<double>::infinity();
  double source = std::numeric_limits<double>::infinity();
  double p_max = 0.0;    // max(p_t, 0) over volume Gauss nodes
  double phi_min = 0.0;  // smallest porosity corner value

  double total() const;
};

inline constexpr double kPenaltyMargin = 1.01;
inline constexpr double kPenaltyFloor = 1e-8;

Penalties compute_penalties(const Scheme1D& scheme, const VelocityField<1>& u);
Penalties compute_penalties(const Scheme2D& scheme, const VelocityField<2>& u);

/// Requires rates.u, rates.penalties and rates.p_t of the state s.
DtBound compute_dt_bound(const Scheme1D& scheme, const State1D& s, const Rates<1>& rates);
DtBound compute_dt_bound(const Scheme2D& scheme, const State2D& s, const Rates<2>& rates);

/// Full right-hand side L(w) in the order c, u, penalties, p_t, r_t.
template <class Scheme>
Rates<Scheme::kDim> evaluate(const Scheme& scheme, const typename Scheme::StateType& s);

/// Thrown by a stage check to make the adaptive driver retry with dt / 2.
class StepRejected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Explicit SSP integration with the limiter applied after every stage.
template <class Scheme>
class TimeIntegrator {
 public:
  using StateT = typename Scheme::StateType;
  using RatesT = Rates<Scheme::kDim>;
  /// Called before every forward Euler sub-update w + h L(w), with h the
  /// effective step length of that sub-update.
  using StageCheck = std::function<void(const StateT&, const RatesT&, double h)>;

  TimeIntegrator(const Scheme& scheme, Integrator kind, LimiterConfig limiter);

  Integrator kind() const { return kind_; }
  const Scheme& scheme() const { return scheme_; }
  const LimiterConfig& limiter() const { return limiter_; }
  void set_stage_check(StageCheck check) { check_ = std::move(check); }

  /// pre, when given, must be evaluate(scheme, s).
  StateT euler_step(const StateT& s, double dt, const RatesT* pre = nullptr) const;
  StateT ssp_rk3_step(const StateT& s, double dt, const RatesT* pre = nullptr) const;

  /// Multistep update from the stored history; throws std::logic_error
  /// when fewer than three earlier levels at step dt are stored.
  StateT ssp_ms3_step(const StateT& s, double dt, const RatesT* pre = nullptr);

  /// One step of the configured integrator. For the multistep method the
  /// first three steps after a reset or a change of dt are taken with RK3.
  StateT step(const StateT& s, double dt, const RatesT* pre = nullptr);

  void reset_history() { history_.clear(); }
  std::size_t history_size() const { return history_.size(); }

  /// Applies the limiter to r.
  StateT limited(StateT s) const;

 private:
  struct Level {
    StateT state;
    RatesT rates;
  };

  StateT sub_update(const StateT& s, const RatesT& l, double h) const;
  void record(const StateT& s, const RatesT& l, double dt);

  const Scheme& scheme_;
  Integrator kind_;
  LimiterConfig limiter_;
  StageCheck check_;
  std::deque<Level> history_;  // oldest first; back() is the newest level
  double history_dt_ = 0.0;
};

extern template class TimeIntegrator<Scheme1D>;
extern template class TimeIntegrator<Scheme2D>;

/// Steps with dt = safety * (Euler bound / multiplier), recomputing the bound
/// from the current state and rejecting (halving dt) when a later stage
/// violates its own bound.
template <class Scheme>
class AdaptiveDriver {
 public:
  using StateT = typename Scheme::StateType;

  AdaptiveDriver(TimeIntegrator<Scheme>& integrator, double safety = 0.9);

  /// Advances by at most dt_max. Returns the step actually taken.
  double advance(StateT& s, double dt_max);

  int rejections() const { return rejections_; }
  const DtBound& last_bound() const { return last_bound_; }

 private:
  TimeIntegrator<Scheme>& integ_;
  double safety_;
  double current_dt_ = 0.0;
  int rejections_ = 0;
  DtBound last_bound_;
};

extern template class AdaptiveDriver<Scheme1D>;
extern template class AdaptiveDriver<Scheme2D>;

}  // namespace bpdg

#endif  // BPDG_STEPPER_HPP_
