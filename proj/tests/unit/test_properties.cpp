#include <cmath>

#include "bpdg/stepper.hpp"
#include "doctest.h"
#include "suites.hpp"

// Bound preservation on random admissible states under the computed
// penalties and step bounds.

using namespace bpdg;
using testing::Rng;

namespace {

const LimiterConfig kOn{1e-13, true, 1e-10};

template <class Scheme>
void check_high_order_bounds(Integrator kind, int trials, int n, std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    CAPTURE(trial);
    const ProblemSpec spec = testing::general_spec(rng);
    const Scheme scheme = testing::scheme_on_grid<Scheme>(spec, n, FluxVariant::UpwindPlus);
    auto s = testing::random_state(scheme, rng, 0.0);
    TimeIntegrator<Scheme> integ(scheme, kind, kOn);
    AdaptiveDriver<Scheme> driver(integ);
    const auto& phi = scheme.porosity();
    bool ok = true;
    for (int step = 0; step < 8; ++step) {
      driver.advance(s, 1.0);
      for (int cell = 0; cell < s.r.n_cells(); ++cell) {
        for (std::size_t k = 0; k < s.r[cell].size(); ++k) {
          ok = ok && s.r[cell][k] >= -10 * kOn.epsilon &&
               s.r[cell][k] <= phi[cell][k] + 10 * kOn.epsilon;
        }
      }
    }
    CHECK(ok);
  }
}

}  // namespace

TEST_CASE("1D forward Euler preserves bounds on random states") {
  const testing::SuiteResult r = testing::euler_property_suite<Scheme1D>(200, 40, 101);
  CAPTURE(r.first_failure);
  CHECK(r.cases == 800);
  CHECK(r.failures == 0);
}

TEST_CASE("2D forward Euler preserves bounds on random states") {
  const testing::SuiteResult r = testing::euler_property_suite<Scheme2D>(50, 8, 202);
  CAPTURE(r.first_failure);
  CHECK(r.cases == 200);
  CHECK(r.failures == 0);
}

TEST_CASE("1D SSP integrators preserve bounds") {
  check_high_order_bounds<Scheme1D>(Integrator::SspRk3, 20, 40, 303);
  check_high_order_bounds<Scheme1D>(Integrator::SspMs3, 20, 40, 304);
}

TEST_CASE("2D SSP integrators preserve bounds") {
  check_high_order_bounds<Scheme2D>(Integrator::SspRk3, 6, 8, 405);
  check_high_order_bounds<Scheme2D>(Integrator::SspMs3, 6, 8, 406);
}
