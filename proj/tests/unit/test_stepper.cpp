#include <cmath>

#include "bpdg/presets.hpp"
#include "bpdg/stepper.hpp"
#include "doctest.h"

using namespace bpdg;

namespace {

// Uniform state, no flow, no dispersion, z1 = z2 and a unit injecting source
// with zero injected concentration: the concentration equation reduces to
// r' = -r in every corner and the pressure grows linearly.
ProblemSpec decay_spec() {
  ProblemSpec s;
  s.z1 = 0.5;
  s.z2 = 0.5;
  s.source = [](Point, double) { return 1.0; };
  s.injected_concentration = [](Point, double) { return 0.0; };
  return s;
}

State1D uniform_state(int n, double r) {
  State1D s;
  s.p = Field1D(n, 0.0);
  s.r = Field1D(n, r);
  return s;
}

const LimiterConfig kOff{1e-13, false, 1e-10};
const LimiterConfig kOn{1e-13, true, 1e-10};

double decay_error(Integrator kind, int steps) {
  const Scheme1D scheme(build_mesh_1d(4), decay_spec());
  TimeIntegrator<Scheme1D> integ(scheme, kind, kOff);
  State1D s = uniform_state(4, 1.0);
  const double dt = 1.0 / steps;
  for (int i = 0; i < steps; ++i) s = integ.step(s, dt);
  return std::abs(s.r[2][1] - std::exp(-1.0));
}

}  // namespace

TEST_CASE("integrator names and multipliers") {
  for (Integrator k : {Integrator::Euler, Integrator::SspRk3, Integrator::SspMs3}) {
    CHECK(parse_integrator(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_integrator("rk4"), std::invalid_argument);
  CHECK(euler_step_multiplier(Integrator::Euler) == 1.0);
  CHECK(euler_step_multiplier(Integrator::SspRk3) == 1.0);
  CHECK(euler_step_multiplier(Integrator::SspMs3) == 3.0);
}

TEST_CASE("one step on the linear decay problem") {
  const Scheme1D scheme(build_mesh_1d(4), decay_spec());
  const State1D s = uniform_state(4, 1.0);
  const double dt = 0.1;

  const Rates<1> l = evaluate(scheme, s);
  for (int j = 0; j < 4; ++j) {
    CHECK(l.u[0][j][0] == 0.0);
    CHECK(l.r_t[j][0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(l.p_t[j][1] == doctest::Approx(2.0).epsilon(1e-14));
  }

  const TimeIntegrator<Scheme1D> euler(scheme, Integrator::Euler, kOff);
  CHECK(euler.euler_step(s, dt).r[1][0] == doctest::Approx(1.0 - dt).epsilon(1e-14));

  const TimeIntegrator<Scheme1D> rk3(scheme, Integrator::SspRk3, kOff);
  const State1D w = rk3.ssp_rk3_step(s, dt);
  const double expect = 1.0 - dt + dt * dt / 2.0 - dt * dt * dt / 6.0;
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(w.r[j][0] - expect) <= 1e-14);
    CHECK(std::abs(w.r[j][1] - expect) <= 1e-14);
  }
  CHECK(w.t == doctest::Approx(dt));
}

TEST_CASE("multistep warm start and update") {
  const Scheme1D scheme(build_mesh_1d(4), decay_spec());
  TimeIntegrator<Scheme1D> integ(scheme, Integrator::SspMs3, kOff);
  const double dt = 0.05;
  State1D s = uniform_state(4, 1.0);
  CHECK_THROWS_AS(integ.ssp_ms3_step(s, dt), std::logic_error);
  integ.reset_history();

  std::vector<double> levels{1.0};
  for (int i = 0; i < 3; ++i) {
    s = integ.step(s, dt);
    levels.push_back(s.r[0][0]);
  }
  const double rk = 1.0 - dt + dt * dt / 2.0 - dt * dt * dt / 6.0;
  CHECK(levels[3] == doctest::Approx(rk * rk * rk).epsilon(1e-13));
  CHECK(integ.history_size() == 3);

  s = integ.step(s, dt);
  CHECK(integ.history_size() == 4);
  CHECK(16.0 / 27.0 + 11.0 / 27.0 == doctest::Approx(1.0));
  const double expect =
      16.0 / 27.0 * (levels[3] * (1.0 - 3.0 * dt)) + 11.0 / 27.0 * (levels[0] * (1.0 - 12.0 / 11.0 * dt));
  CHECK(s.r[0][0] == doctest::Approx(expect).epsilon(1e-13));

  // A new step length restarts the history.
  s = integ.step(s, 0.5 * dt);
  CHECK(integ.history_size() == 1);
  integ.reset_history();
  CHECK(integ.history_size() == 0);
}

TEST_CASE("third-order temporal accuracy on the decay problem") {
  for (Integrator k : {Integrator::SspRk3, Integrator::SspMs3}) {
    CAPTURE(to_string(k));
    const double e1 = decay_error(k, 40);
    const double e2 = decay_error(k, 80);
    const double e3 = decay_error(k, 160);
    CHECK(std::log2(e1 / e2) > 2.8);
    CHECK(std::log2(e2 / e3) > 2.8);
  }
  const double e1 = decay_error(Integrator::Euler, 40);
  const double e2 = decay_error(Integrator::Euler, 80);
  CHECK(std::log2(e1 / e2) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("rk3 self-convergence in time on example 1") {
  const Scheme1D scheme(build_mesh_1d(20), make_problem(1, {1e-5, 1.0}));
  const TimeIntegrator<Scheme1D> integ(scheme, Integrator::SspRk3, kOff);
  auto solve = [&](int steps) {
    State1D s = scheme.initial_state();
    for (int i = 0; i < steps; ++i) s = integ.ssp_rk3_step(s, 0.1 / steps);
    return s;
  };
  const State1D a = solve(20), b = solve(40), c = solve(80);
  double dab = 0.0, dbc = 0.0;
  for (int j = 0; j < 20; ++j) {
    for (int k = 0; k < 2; ++k) {
      dab = std::max(dab, std::abs(a.r[j][k] - b.r[j][k]));
      dbc = std::max(dbc, std::abs(b.r[j][k] - c.r[j][k]));
    }
  }
  CHECK(std::log2(dab / dbc) >= 2.5);
}

TEST_CASE("penalty coefficients") {
  ProblemSpec spec;
  const Scheme1D scheme(build_mesh_1d(8), spec);
  VelocityField<1> u{Field1D(8, 0.0)};
  u[0][3] = {2.0, 2.0};
  Penalties pen = compute_penalties(scheme, u);
  CHECK(pen.alpha == doctest::Approx(2.02));
  CHECK(pen.alpha_tilde == kPenaltyFloor);

  u[0] = Field1D(8, -1.0);
  CHECK(compute_penalties(scheme, u).alpha == kPenaltyFloor);
  const Scheme1D minus(build_mesh_1d(8), spec, FluxPair{FluxVariant::UpwindMinus});
  CHECK(compute_penalties(minus, u).alpha == doctest::Approx(1.01));

  ProblemSpec diff;
  diff.d_mol = 0.3;
  const Scheme2D s2(build_mesh_2d(6, 6), diff);
  const VelocityField<2> u2{Field2D(36, 0.0), Field2D(36, 0.0)};
  CHECK(compute_penalties(s2, u2).alpha_tilde == doctest::Approx(1.01 * 0.3 / 2.0));
}

TEST_CASE("forward Euler step bounds") {
  ProblemSpec spec;
  const Scheme1D scheme(build_mesh_1d(10), spec);
  const double h = scheme.mesh().dx();
  const State1D s = uniform_state(10, 0.5);
  Rates<1> rates;
  rates.u = {Field1D(10, 1.0)};
  rates.p_t = Field1D(10, 0.0);
  rates.penalties = compute_penalties(scheme, rates.u);
  DtBound b = compute_dt_bound(scheme, s, rates);
  CHECK(b.convection == doctest::Approx(h / (6.0 * 1.01)));
  CHECK(std::isinf(b.source));
  CHECK(b.phi_min == 1.0);

  ProblemSpec diff;
  diff.d_mol = 1.0;
  const Scheme1D sd(build_mesh_1d(10), diff);
  rates.u = {Field1D(10, 0.0)};
  rates.penalties = compute_penalties(sd, rates.u);
  b = compute_dt_bound(sd, s, rates);
  CHECK(rates.penalties.alpha_tilde == doctest::Approx(0.505));
  CHECK(b.diffusion == doctest::Approx(h * h / (6.0 * 0.505 + 3.0)));

  const Scheme2D s2(build_mesh_2d(8, 8), diff);
  const double h2 = s2.mesh().dx();
  State2D st;
  st.p = Field2D(64, 0.0);
  st.r = Field2D(64, 0.5);
  Rates<2> r2;
  r2.u = {Field2D(64, 0.0), Field2D(64, 0.0)};
  r2.p_t = Field2D(64, 0.0);
  r2.penalties = compute_penalties(s2, r2.u);
  const DtBound b2 = compute_dt_bound(s2, st, r2);
  CHECK(b2.diffusion == doctest::Approx(h2 * h2 / (12.0 * 2.01)));
  CHECK(b2.total() == b2.diffusion);

  // Production and pressure growth limit the source step.
  const Scheme1D dec(build_mesh_1d(4), decay_spec());
  const State1D sd4 = uniform_state(4, 0.5);
  const Rates<1> l = evaluate(dec, sd4);
  const DtBound bs = compute_dt_bound(dec, sd4, l);
  CHECK(bs.p_max == doctest::Approx(2.0));
  CHECK(bs.source == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("adaptive driver respects the bound and releases its stage check") {
  const Scheme1D scheme(build_mesh_1d(4), decay_spec());
  TimeIntegrator<Scheme1D> integ(scheme, Integrator::SspRk3, kOn);
  AdaptiveDriver<Scheme1D> driver(integ, 0.9);
  State1D s = uniform_state(4, 0.5);
  double t = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double taken = driver.advance(s, 1.0);
    CHECK(taken == doctest::Approx(0.9 / 6.0));
    t += taken;
  }
  CHECK(s.t == doctest::Approx(t));
  CHECK(driver.advance(s, 0.01) == 0.01);
  CHECK(driver.rejections() == 0);
  CHECK(driver.last_bound().source == doctest::Approx(1.0 / 6.0));
  // Outside the driver a step above the bound is the caller's business.
  CHECK_NOTHROW(integ.euler_step(uniform_state(4, 0.5), 0.5));
  CHECK_THROWS_AS(AdaptiveDriver<Scheme1D>(integ, 1.5), std::invalid_argument);
}

TEST_CASE("adaptive driver on a flow problem stays in bounds") {
  const Scheme1D scheme(build_mesh_1d(40), make_problem(3, {}));
  for (Integrator k : {Integrator::SspRk3, Integrator::SspMs3}) {
    TimeIntegrator<Scheme1D> integ(scheme, k, kOn);
    AdaptiveDriver<Scheme1D> driver(integ);
    State1D s = scheme.initial_state();
    while (s.t < 0.05 - 1e-14) {
      driver.advance(s, 0.05 - s.t);
      const auto& phi = scheme.porosity();
      for (int j = 0; j < 40; ++j) {
        for (int c = 0; c < 2; ++c) {
          CHECK(s.r[j][c] >= -1e-12);
          CHECK(s.r[j][c] <= phi[j][c] + 1e-12);
        }
      }
    }
    CHECK(s.t == doctest::Approx(0.05));
  }
}
