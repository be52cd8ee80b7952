#include "bpdg/stepper.hpp"

#include <algorithm>
#include <cmath>

namespace bpdg {

std::string to_string(Integrator k) {
  switch (k) {
    case Integrator::Euler:
      return "euler";
    case Integrator::SspRk3:
      return "rk3";
    case Integrator::SspMs3:
      return "ms3";
  }
  return "?";
}

Integrator parse_integrator(const std::string& s) {
  if (s == "euler") return Integrator::Euler;
  if (s == "rk3") return Integrator::SspRk3;
  if (s == "ms3") return Integrator::SspMs3;
  throw std::invalid_argument("unknown integrator '" + s + "'");
}

double euler_step_multiplier(Integrator k) { return k == Integrator::SspMs3 ? 3.0 : 1.0; }

StepParams StepParams::make(const Mesh1D& mesh, double dt) {
  StepParams p;
  p.dt = dt;
  p.lambda_x = dt / mesh.dx();
  p.Lambda_x = dt / (mesh.dx() * mesh.dx());
  return p;
}

StepParams StepParams::make(const Mesh2D& mesh, double dt) {
  StepParams p;
  p.dt = dt;
  p.lambda_x = dt / mesh.dx();
  p.lambda_y = dt / mesh.dy();
  p.lambda_area = dt / mesh.cell_measure();
  p.Lambda_x = dt / (mesh.dx() * mesh.dx());
  p.Lambda_y = dt / (mesh.dy() * mesh.dy());
  return p;
}

double DtBound::total() const { return std::min({convection, diffusion, source}); }

namespace {

double with_margin(double bound) { return std::max(kPenaltyMargin * bound, kPenaltyFloor); }

// Source-term conditions shared by both dimensions.
template <class Scheme>
void source_bound(const Scheme& scheme, const typename Scheme::StateType& s,
                  const Rates<Scheme::kDim>& rates, DtBound& b) {
  const ProblemSpec& spec = scheme.spec();
  const auto& phi = scheme.porosity();
  for (int cell = 0; cell < rates.p_t.n_cells(); ++cell) {
    const auto ptg = scheme.gauss_values(rates.p_t, cell);
    const auto& pc = phi[cell];
    const double phi_cell = *std::min_element(pc.begin(), pc.end());
    for (std::size_t g = 0; g < ptg.size(); ++g) {
      b.p_max = std::max(b.p_max, ptg[g]);
      const double q = scheme.source_rate(cell, static_cast<int>(g), s.t);
      if (q < 0.0) b.source = std::min(b.source, phi_cell / (6.0 * -q));
    }
  }
  if (b.p_max > 0.0) {
    for (double z : {spec.z1, spec.z2}) {
      if (z > 0.0) b.source = std::min(b.source, 1.0 / (6.0 * z * b.p_max));
    }
  }
}

}  // namespace

Penalties compute_penalties(const Scheme1D& scheme, const VelocityField<1>& u) {
  const DiffusionExtrema ex = scheme.diffusion_extrema(u);
  return {with_margin(scheme.convection_penalty_floor(u)), with_margin(0.5 * ex.d_max)};
}

Penalties compute_penalties(const Scheme2D& scheme, const VelocityField<2>& u) {
  const Mesh2D& m = scheme.mesh();
  const DiffusionExtrema ex = scheme.diffusion_extrema(u);
  const double r3 = std::sqrt(3.0);
  const double bx = m.dy() / (2.0 * m.dx()) * ex.d11 + r3 * ex.d12;
  const double by = m.dx() / (2.0 * m.dy()) * ex.d22 + r3 * ex.d21;
  return {with_margin(scheme.convection_penalty_floor(u)), with_margin(std::max(bx, by))};
}

DtBound compute_dt_bound(const Scheme1D& scheme, const State1D& s, const Rates<1>& rates) {
  DtBound b;
  const Mesh1D& m = scheme.mesh();
  const int n = m.n_cells();
  const double h = m.dx();
  const auto& phi = scheme.porosity();
  const FluxPair& flux = scheme.flux();
  const Penalties& pen = rates.penalties;
  b.phi_min = phi.min_corner();

  for (int k = 1; k < n; ++k) {
    const Trace ut = scheme.velocity_trace(rates.u, k);
    const double phik = phi[k][0];
    const double am = flux.coeff_minus(ut, pen.alpha);
    const double ap = flux.coeff_plus(ut, pen.alpha);
    if (am > 0.0) b.convection = std::min(b.convection, h * phik / (6.0 * am));
    if (ap < 0.0) b.convection = std::min(b.convection, h * phik / (6.0 * -ap));
  }

  for (int j = 0; j < n; ++j) {
    const bool has_l = j > 0;
    const bool has_r = j < n - 1;
    const double d_l = has_l ? scheme.diffusion_trace(rates.u, j).plus : 0.0;
    const double d_r = has_r ? scheme.diffusion_trace(rates.u, j + 1).minus : 0.0;
    const double den_l = 6.0 * pen.alpha_tilde * has_l + 3.0 * d_r;
    const double den_r = 6.0 * pen.alpha_tilde * has_r + 3.0 * d_l;
    if (den_l > 0.0) b.diffusion = std::min(b.diffusion, h * h * phi[j][0] / den_l);
    if (den_r > 0.0) b.diffusion = std::min(b.diffusion, h * h * phi[j][1] / den_r);
  }

  source_bound(scheme, s, rates, b);
  return b;
}

DtBound compute_dt_bound(const Scheme2D& scheme, const State2D& s, const Rates<2>& rates) {
  DtBound b;
  const Mesh2D& m = scheme.mesh();
  const auto& phi = scheme.porosity();
  const FluxPair& flux = scheme.flux();
  const Penalties& pen = rates.penalties;
  b.phi_min = phi.min_corner();

  const double inv_sum = 1.0 / m.dx() + 1.0 / m.dy();
  const auto& edges = m.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& edge = edges[e];
    if (edge.kind != EdgeKind::Interior) continue;
    const auto& pc = phi[edge.plus_cell];
    const double phi_e = edge.normal == Axis::X ? std::min(pc[0], pc[2]) : std::min(pc[0], pc[1]);
    for (int beta = 0; beta < 2; ++beta) {
      const Trace ut = scheme.velocity_trace(rates.u, static_cast<int>(e), beta);
      const double am = flux.coeff_minus(ut, pen.alpha);
      const double ap = flux.coeff_plus(ut, pen.alpha);
      if (am > 0.0) b.convection = std::min(b.convection, phi_e / (6.0 * am * inv_sum));
      if (ap < 0.0) b.convection = std::min(b.convection, phi_e / (6.0 * -ap * inv_sum));
    }
  }

  const DiffusionExtrema ex = scheme.diffusion_extrema(rates.u);
  const double area = m.cell_measure();
  const double den_x =
      ex.d11 / (m.dx() * m.dx()) + 2.0 * (pen.alpha_tilde + ex.d12) / area;
  const double den_y =
      ex.d22 / (m.dy() * m.dy()) + 2.0 * (pen.alpha_tilde + ex.d21) / area;
  for (double den : {den_x, den_y}) {
    if (den > 0.0) b.diffusion = std::min(b.diffusion, b.phi_min / (12.0 * den));
  }

  source_bound(scheme, s, rates, b);
  return b;
}

template <class Scheme>
Rates<Scheme::kDim> evaluate(const Scheme& scheme, const typename Scheme::StateType& s) {
  Rates<Scheme::kDim> out;
  out.c = scheme.concentration(s);
  out.u = scheme.solve_velocity(s, out.c);
  out.penalties = compute_penalties(scheme, out.u);
  out.p_t = scheme.solve_pressure_rate(s, out.u);
  out.r_t = scheme.concentration_rhs(s, out.c, out.u, out.p_t, out.penalties);
  return out;
}

template Rates<1> evaluate(const Scheme1D&, const State1D&);
template Rates<2> evaluate(const Scheme2D&, const State2D&);

namespace {

template <int Dim>
State<Dim> combine(double a, const State<Dim>& x, double b, const State<Dim>& y, double t) {
  return {t, lincomb(a, x.p, b, y.p), lincomb(a, x.r, b, y.r)};
}

}  // namespace

template <class Scheme>
TimeIntegrator<Scheme>::TimeIntegrator(const Scheme& scheme, Integrator kind,
                                       LimiterConfig limiter)
    : scheme_(scheme), kind_(kind), limiter_(limiter) {}

template <class Scheme>
typename TimeIntegrator<Scheme>::StateT TimeIntegrator<Scheme>::limited(StateT s) const {
  s.r = limit_field(s.r, scheme_.porosity(), limiter_);
  return s;
}

template <class Scheme>
typename TimeIntegrator<Scheme>::StateT TimeIntegrator<Scheme>::sub_update(const StateT& s,
                                                                           const RatesT& l,
                                                                           double h) const {
  if (check_) check_(s, l, h);
  StateT out = s;
  out.p.axpy(h, l.p_t);
  out.r.axpy(h, l.r_t);
  return out;
}

template <class Scheme>
typename TimeIntegrator<Scheme>::StateT TimeIntegrator<Scheme>::euler_step(
    const StateT& s, double dt, const RatesT* pre) const {
  const RatesT l0 = pre ? *pre : evaluate(scheme_, s);
  StateT out = sub_update(s, l0, dt);
  out.t = s.t + dt;
  return limited(std::move(out));
}

template <class Scheme>
typename TimeIntegrator<Scheme>::StateT TimeIntegrator<Scheme>::ssp_rk3_step(
    const StateT& s, double dt, const RatesT* pre) const {
  const RatesT l0 = pre ? *pre : evaluate(scheme_, s);
  StateT w1 = sub_update(s, l0, dt);
  w1.t = s.t + dt;
  w1 = limited(std::move(w1));

  const RatesT l1 = evaluate(scheme_, w1);
  StateT w2 = combine(0.75, s, 0.25, sub_update(w1, l1, dt), s.t + 0.5 * dt);
  w2 = limited(std::move(w2));

  const RatesT l2 = evaluate(scheme_, w2);
  StateT w3 = combine(1.0 / 3.0, s, 2.0 / 3.0, sub_update(w2, l2, dt), s.t + dt);
  return limited(std::move(w3));
}

template <class Scheme>
void TimeIntegrator<Scheme>::record(const StateT& s, const RatesT& l, double dt) {
  if (!history_.empty() && std::abs(dt - history_dt_) > 1e-12 * dt) history_.clear();
  if (!history_.empty() && history_.back().state.t == s.t) history_.pop_back();
  history_.push_back({s, l});
  history_dt_ = dt;
  while (history_.size() > 4) history_.pop_front();
}

template <class Scheme>
typename TimeIntegrator<Scheme>::StateT TimeIntegrator<Scheme>::ssp_ms3_step(
    const StateT& s, double dt, const RatesT* pre) {
  record(s, pre ? *pre : evaluate(scheme_, s), dt);
  if (history_.size() < 4) {
    throw std::logic_error("multistep update needs three earlier levels at the same step");
  }
  const Level& now = history_.back();
  const Level& old = history_.front();
  const StateT a = sub_update(now.state, now.rates, 3.0 * dt);
  const StateT b = sub_update(old.state, old.rates, 12.0 / 11.0 * dt);
  return limited(combine(16.0 / 27.0, a, 11.0 / 27.0, b, s.t + dt));
}

template <class Scheme>
typename TimeIntegrator<Scheme>::StateT TimeIntegrator<Scheme>::step(const StateT& s, double dt,
                                                                     const RatesT* pre) {
  switch (kind_) {
    case Integrator::Euler:
      return euler_step(s, dt, pre);
    case Integrator::SspRk3:
      return ssp_rk3_step(s, dt, pre);
    case Integrator::SspMs3: {
      const RatesT l0 = pre ? *pre : evaluate(scheme_, s);
      record(s, l0, dt);
      if (history_.size() < 4) return ssp_rk3_step(s, dt, &l0);
      return ssp_ms3_step(s, dt, &l0);
    }
  }
  return ssp_rk3_step(s, dt, pre);
}

template class TimeIntegrator<Scheme1D>;
template class TimeIntegrator<Scheme2D>;

template <class Scheme>
AdaptiveDriver<Scheme>::AdaptiveDriver(TimeIntegrator<Scheme>& integrator, double safety)
    : integ_(integrator), safety_(safety) {
  if (!(safety > 0.0 && safety <= 1.0)) {
    throw std::invalid_argument("safety factor must lie in (0, 1]");
  }
}

template <class Scheme>
double AdaptiveDriver<Scheme>::advance(StateT& s, double dt_max) {
  const Scheme& scheme = integ_.scheme();
  const auto l0 = evaluate(scheme, s);
  last_bound_ = compute_dt_bound(scheme, s, l0);
  const double mult = euler_step_multiplier(integ_.kind());
  double dt = safety_ * last_bound_.total() / mult;
  if (integ_.kind() == Integrator::SspMs3 && current_dt_ > 0.0 && current_dt_ <= dt) {
    dt = current_dt_;  // keep the history usable
  }

  integ_.set_stage_check([&scheme](const StateT& w, const auto& l, double h) {
    if (h > compute_dt_bound(scheme, w, l).total()) {
      throw StepRejected("stage violates its step bound");
    }
  });
  struct ClearCheck {
    TimeIntegrator<Scheme>& integ;
    ~ClearCheck() { integ.set_stage_check(nullptr); }
  } clear{integ_};
  for (int attempt = 0; attempt < 60; ++attempt) {
    const bool clipped = dt >= dt_max;
    const double taken = clipped ? dt_max : dt;
    try {
      s = integ_.step(s, taken, &l0);
      if (!clipped) current_dt_ = dt;
      return taken;
    } catch (const StepRejected&) {
      ++rejections_;
      dt = 0.5 * taken;
      current_dt_ = dt;
    }
  }
  throw std::runtime_error("adaptive step rejected 60 times at t = " + std::to_string(s.t));
}

template class AdaptiveDriver<Scheme1D>;
template class AdaptiveDriver<Scheme2D>;

}  // namespace bpdg
