#ifndef BPDG_TESTS_SUITES_HPP_
#define BPDG_TESTS_SUITES_HPP_

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "bpdg/limiter.hpp"
#include "bpdg/stepper.hpp"
#include "random_states.hpp"

// Randomized suites shared by the unit tests and the acceptance binary.
// Each returns the number of cases run and the number that failed.

namespace bpdg::testing {

struct SuiteResult {
  long cases = 0;
  long failures = 0;
  std::string first_failure;

  bool passed() const { return cases > 0 && failures == 0; }
  void record(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures == 0) first_failure = what;
    ++failures;
  }
};

template <class Scheme>
Scheme scheme_on_grid(const ProblemSpec& spec, int n, FluxVariant v) {
  if constexpr (Scheme::kDim == 1) {
    return Scheme(build_mesh_1d(n), spec, FluxPair{v});
  } else {
    return Scheme(build_mesh_2d(n, n), spec, FluxPair{v});
  }
}

inline std::vector<double> pieces(const Decomposition1D& d) {
  return {d.convection, d.diffusion, d.source};
}

inline std::vector<double> pieces(const Decomposition2D& d) {
  return {d.convection, d.diffusion_x, d.diffusion_y, d.source};
}

/// Random admissible states under the computed penalties and the Euler step
/// bound: every piece of the cell-average split of r and of Phi - r is
/// nonnegative, unlimited averages stay in [0, Phi-bar] and limited corners in
/// [-10 eps, Phi + 10 eps].
template <class Scheme>
SuiteResult euler_property_suite(int trials, int n, std::uint64_t seed) {
  SuiteResult res;
  Rng rng(seed);
  const FluxVariant variants[] = {FluxVariant::UpwindPlus, FluxVariant::UpwindMinus,
                                  FluxVariant::Central};
  const LimiterConfig on{1e-13, true, 1e-10};
  const LimiterConfig off{1e-13, false, 1e-10};
  for (int trial = 0; trial < trials; ++trial) {
    const std::string tag = "state " + std::to_string(trial);
    const FluxVariant v = variants[trial % 3];
    const ProblemSpec spec = general_spec(rng);
    const Scheme scheme = scheme_on_grid<Scheme>(spec, n, v);
    const Scheme mirror = scheme_on_grid<Scheme>(mirrored_spec(spec), n, v);
    const auto s = random_state(scheme, rng, uniform(rng, 0.0, 1.0));
    const auto& phi = scheme.porosity();

    const auto l = evaluate(scheme, s);
    const double dt = compute_dt_bound(scheme, s, l).total();
    res.record(l.penalties.alpha > 0.0 && l.penalties.alpha_tilde > 0.0 && std::isfinite(dt) &&
                   dt > 0.0,
               tag + ": penalties or step bound not positive");

    auto s2 = s;
    s2.r = lincomb(1.0, phi.field(), -1.0, s.r);
    const auto l2 = evaluate(mirror, s2);
    const auto d1 = scheme.cell_average_decomposition(s, l.c, l.u, l.p_t, l.penalties, dt);
    const auto d2 = mirror.cell_average_decomposition(s2, l2.c, l2.u, l2.p_t, l2.penalties, dt);
    bool pos = true;
    for (std::size_t cell = 0; cell < d1.size(); ++cell) {
      const double tol = 1e-13 * (1.0 + cell_average(phi[static_cast<int>(cell)]));
      for (double x : pieces(d1[cell])) pos = pos && x >= -tol;
      for (double x : pieces(d2[cell])) pos = pos && x >= -tol;
    }
    res.record(pos, tag + ": negative decomposition piece");

    const auto w = TimeIntegrator<Scheme>(scheme, Integrator::Euler, off).euler_step(s, dt, &l);
    bool avg = true;
    for (int cell = 0; cell < w.r.n_cells(); ++cell) {
      const double rbar = cell_average(w.r[cell]);
      const double pbar = cell_average(phi[cell]);
      const double tol = 1e-12 * (1.0 + pbar);
      avg = avg && rbar >= -tol && rbar <= pbar + tol;
    }
    res.record(avg, tag + ": Euler average outside [0, Phi-bar]");

    bool corners = true;
    try {
      const auto lim = TimeIntegrator<Scheme>(scheme, Integrator::Euler, on).limited(w);
      for (int cell = 0; cell < lim.r.n_cells(); ++cell) {
        for (std::size_t k = 0; k < lim.r[cell].size(); ++k) {
          corners = corners && lim.r[cell][k] >= -10 * on.epsilon &&
                    lim.r[cell][k] <= phi[cell][k] + 10 * on.epsilon;
        }
      }
    } catch (const BoundViolation&) {
      corners = false;
    }
    res.record(corners, tag + ": limited corner outside [0, Phi]");
  }
  return res;
}

/// Randomized limiter cells: average kept to 1e-14 relative, corners in
/// [0, Phi], and a second application changes nothing.
inline SuiteResult limiter_suite(int cells, std::uint64_t seed) {
  SuiteResult res;
  Rng rng(seed);
  const LimiterConfig cfg{1e-13, true, 1e-10};
  for (int i = 0; i < cells; ++i) {
    const std::string tag = "cell " + std::to_string(i);
    {
      const std::array<double, 2> phi{uniform(rng, 0.2, 1.2), uniform(rng, 0.2, 1.2)};
      const double pbar = 0.5 * (phi[0] + phi[1]);
      const double rbar = uniform(rng, 0.0, 1.0) * pbar;
      const double d = uniform(rng, -1.0, 1.0);
      const auto l = limit_cell_1d({rbar - d, rbar + d}, phi, cfg);
      const double lbar = 0.5 * (l[0] + l[1]);
      res.record(std::abs(lbar - rbar) <= 1e-14 * std::max(1.0, std::abs(rbar)),
                 tag + " (1D): average changed");
      res.record(l[0] >= 0.0 && l[1] >= 0.0 && l[0] <= phi[0] && l[1] <= phi[1],
                 tag + " (1D): corner out of bounds");
      res.record(limit_cell_1d(l, phi, cfg) == l, tag + " (1D): not idempotent");
    }
    {
      std::array<double, 4> phi{}, d{};
      for (double& x : phi) x = uniform(rng, 0.2, 1.2);
      for (double& x : d) x = uniform(rng, -1.0, 1.0);
      const double pbar = cell_average(phi);
      const double rbar = uniform(rng, 0.0, 1.0) * pbar;
      const double dbar = cell_average(d);
      std::array<double, 4> r{};
      for (int k = 0; k < 4; ++k) r[k] = rbar + d[k] - dbar;
      const auto l = limit_cell_2d(r, phi, cfg);
      res.record(std::abs(cell_average(l) - rbar) <= 1e-14 * std::max(1.0, std::abs(rbar)),
                 tag + " (2D): average changed");
      bool in = true;
      for (int k = 0; k < 4; ++k) in = in && l[k] >= 0.0 && l[k] <= phi[k];
      res.record(in, tag + " (2D): corner out of bounds");
      res.record(limit_cell_2d(l, phi, cfg) == l, tag + " (2D): not idempotent");
    }
  }
  return res;
}

/// Flux-pair identity at c = 1, stationarity of r = Phi with injected c = 1,
/// and exactness of the two-point rule on cubics.
inline SuiteResult consistency_suite(std::uint64_t seed) {
  SuiteResult res;
  Rng rng(seed);
  const FluxVariant variants[] = {FluxVariant::UpwindPlus, FluxVariant::UpwindMinus,
                                  FluxVariant::Central};
  for (int i = 0; i < 1000; ++i) {
    const Trace u{uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0)};
    const double alpha = uniform(rng, 0.0, 5.0);
    for (FluxVariant v : variants) {
      const FluxPair f{v};
      res.record(f.convection(u, {1.0, 1.0}, alpha) == f.velocity(u),
                 "uc^ differs from u^ at c = 1 (" + to_string(v) + ")");
    }
  }

  for (int trial = 0; trial < 5; ++trial) {
    ProblemSpec spec = general_spec(rng);
    spec.injected_concentration = [](Point, double) { return 1.0; };
    for (FluxVariant v : variants) {
      const auto s1 = scheme_on_grid<Scheme1D>(spec, 16, v);
      auto st1 = random_state(s1, rng);
      st1.r = s1.porosity().field();
      const Field1D r1 = evaluate(s1, st1).r_t;
      double m1 = 0.0;
      for (int j = 0; j < r1.n_cells(); ++j) m1 = std::max({m1, std::abs(r1[j][0]), std::abs(r1[j][1])});
      res.record(m1 <= 1e-12 * s1.porosity().field().max_corner(), "1D r = Phi not stationary");

      const auto s2 = scheme_on_grid<Scheme2D>(spec, 6, v);
      auto st2 = random_state(s2, rng);
      st2.r = s2.porosity().field();
      const Field2D r2 = evaluate(s2, st2).r_t;
      double m2 = 0.0;
      for (int c = 0; c < r2.n_cells(); ++c) {
        for (double x : r2[c]) m2 = std::max(m2, std::abs(x));
      }
      res.record(m2 <= 1e-12 * s2.porosity().field().max_corner(), "2D r = Phi not stationary");
    }
  }

  const GaussRule2 g = gauss2();
  for (int i = 0; i < 200; ++i) {
    const double a = uniform(rng, -5, 5), b = uniform(rng, -5, 5), c = uniform(rng, -5, 5),
                 d = uniform(rng, -5, 5);
    const double q = g.integrate([&](double x) { return a + b * x + c * x * x + d * x * x * x; });
    res.record(std::abs(q - (a + c / 12.0)) <= 1e-14 * (1.0 + std::abs(a) + std::abs(c)),
               "two-point rule not exact on a cubic");
  }
  return res;
}

}  // namespace bpdg::testing

#endif  // BPDG_TESTS_SUITES_HPP_
