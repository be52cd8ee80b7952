#include <cmath>
#include <random>

#include "bpdg/physics.hpp"
#include "bpdg/presets.hpp"
#include "doctest.h"

using namespace bpdg;

TEST_CASE("a(c) = mu(c) / kappa(x)") {
  ProblemSpec s;
  CHECK(coeff_a(s, 0.3, {}) == 1.0);
  s.viscosity = [](double c) { return 1.0 + c; };
  s.permeability = [](Point) { return 2.0; };
  CHECK(coeff_a(s, 1.0, {}) == 1.0);
  s.permeability = [](Point) { return 0.0; };
  CHECK_THROWS_AS(coeff_a(s, 0.5, {}), std::invalid_argument);
}

TEST_CASE("d~(r) is affine in r") {
  ProblemSpec s;
  CHECK(coeff_d_tilde(s, 0.3, 0.8) == doctest::Approx(0.8));
  s.z1 = 0.1;
  CHECK(coeff_d_tilde(s, 0.8, 0.8) == doctest::Approx(0.08));
  CHECK(coeff_d_tilde(s, 0.0, 0.8) == doctest::Approx(0.8));
  // Lower bound min(z1, z2) Phi for admissible r.
  for (double r : {0.0, 0.2, 0.5, 0.8}) CHECK(coeff_d_tilde(s, r, 0.8) >= 0.1 * 0.8 - 1e-15);
}

TEST_CASE("d(c) and b(c) of the non-conservative model") {
  ProblemSpec s;
  s.z1 = 0.4;
  s.z2 = 0.6;
  s.porosity = [](Point) { return 0.5; };
  CHECK(coeff_d(s, 0.25, {}) == doctest::Approx(0.5 * (0.4 * 0.25 + 0.6 * 0.75)));
  CHECK(coeff_b(s, 0.25, {}) == doctest::Approx(0.5 * 0.25 * (0.4 - 0.4 * 0.25 - 0.6 * 0.75)));
}

TEST_CASE("dispersion tensor examples") {
  ProblemSpec s;
  s.d_long = 0.7;
  s.d_tran = 0.2;
  const DiffusionTensor d = diffusion_tensor(s, {1.0, 0.0}, {});
  CHECK(d.d11 == doctest::Approx(0.7));
  CHECK(d.d22 == doctest::Approx(0.2));
  CHECK(d.d12 == 0.0);
  CHECK(d.d21 == 0.0);

  s.d_mol = 0.3;
  s.porosity = [](Point) { return 2.0; };
  const DiffusionTensor z = diffusion_tensor(s, {0.0, 0.0}, {});
  CHECK(z.d11 == doctest::Approx(0.6));
  CHECK(z.d22 == doctest::Approx(0.6));
  CHECK(z.d12 == 0.0);

  const ProblemSpec ex6 = make_problem(6, {});
  const DiffusionTensor e6 = diffusion_tensor(ex6, {0.3, -0.4}, {1.0, 1.0});
  CHECK(e6.d11 == doctest::Approx(0.5));
  CHECK(e6.d22 == doctest::Approx(0.5));
  CHECK(std::abs(e6.d12) < 1e-15);

  CHECK(diffusion_scalar(s, -2.0, {}) == doctest::Approx(2.0 * (0.3 + 0.7 * 2.0)));
}

TEST_CASE("dispersion tensor is symmetric positive semidefinite") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0), pos(0.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    ProblemSpec s;
    s.d_mol = pos(rng);
    s.d_long = pos(rng);
    s.d_tran = pos(rng);
    const double phi = 0.1 + pos(rng);
    s.porosity = [phi](Point) { return phi; };
    const DiffusionTensor d = diffusion_tensor(s, {u(rng), u(rng)}, {});
    CHECK(d.d12 == d.d21);
    const double tr = d.d11 + d.d22;
    const double det = d.d11 * d.d22 - d.d12 * d.d21;
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    CHECK(0.5 * tr - disc >= -1e-12);
  }
}

TEST_CASE("E + E_perp = I") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  ProblemSpec s;
  s.d_long = 1.0;
  s.d_tran = 1.0;
  for (int trial = 0; trial < 200; ++trial) {
    const Velocity v{u(rng), u(rng)};
    const double norm = std::hypot(v[0], v[1]);
    if (norm == 0.0) continue;
    const DiffusionTensor d = diffusion_tensor(s, v, {});
    CHECK(std::abs(d.d11 / norm - 1.0) <= 1e-14);
    CHECK(std::abs(d.d22 / norm - 1.0) <= 1e-14);
    CHECK(std::abs(d.d12 / norm) <= 1e-14);
  }
}

TEST_CASE("source terms") {
  const ProblemSpec ex1 = make_problem(1, {1e-5, 1.0});
  const SourceSample s0 = source_terms(ex1, {0.0, 0.0}, 0.0, 0.4);
  CHECK(s0.q == doctest::Approx(1.0));
  CHECK(std::abs(s0.c_tilde) < 1e-15);

  ProblemSpec prod;
  prod.source = [](Point, double) { return -1.0; };
  const SourceSample s1 = source_terms(prod, {}, 0.0, 0.7);
  CHECK(s1.q == -1.0);
  CHECK(s1.c_tilde == 0.7);

  const SourceSample s2 = source_terms(ProblemSpec{}, {}, 0.0, 0.7);
  CHECK(s2.q == 0.0);
  CHECK(s2.c_tilde == 0.0);

  const SourceSample w = source_terms(ProblemSpec{}, {}, 0.0, 0.3, 2.5, 1.0);
  CHECK(w.q == 2.5);
  CHECK(w.c_tilde == 1.0);
}

TEST_CASE("closed-form solutions") {
  const ExactSolution a = exact_solution(1, {0.0, 0.0}, 0.0, 1e-5);
  CHECK(a.c == 0.0);
  CHECK(a.p == 0.0);
  const ExactSolution b = exact_solution(1, {kTwoPi / 2, 0.0}, 0.0, 1e-5);
  CHECK(b.c == doctest::Approx(1.0));
  CHECK(b.p == doctest::Approx(-2.0));
  const ExactSolution c = exact_solution(4, {kTwoPi / 4, kTwoPi / 4}, 0.7, 1e-3);
  CHECK(c.c == doctest::Approx(0.5));
  CHECK(c.p == doctest::Approx(-std::exp(-1.4)));
  CHECK_THROWS(exact_solution(3, {}, 0.0, 0.0));
}

TEST_CASE("closed forms match the initial data at grid corners") {
  for (int id : {1, 4}) {
    const ProblemSpec s = make_problem(id, {id == 1 ? 1e-5 : 1e-3, 1.0});
    for (int i = 0; i <= 16; ++i) {
      for (int j = 0; j <= (id == 1 ? 0 : 16); ++j) {
        const Point x{i * kTwoPi / 16, j * kTwoPi / 16};
        CHECK(s.exact(x, 0.0).c == doctest::Approx(s.initial_concentration(x)));
        CHECK(s.exact(x, 0.0).p == doctest::Approx(s.initial_pressure(x)));
      }
    }
  }
}

namespace {

// Residuals of the conservative system evaluated with centred differences:
//   d~ p_t + div u - q,   r_t + div(u c - D grad c) - (c~ q - z1 r p_t),
// with u = -(kappa / mu) grad p. Both vanish for a true solution.
struct Residual {
  double pressure;
  double concentration;
};

Residual residual(const ProblemSpec& s, Point x, double t, bool two_d) {
  const double h = 1e-4;
  auto c = [&](Point y, double tt) { return s.exact(y, tt).c; };
  auto p = [&](Point y, double tt) { return s.exact(y, tt).p; };
  auto vel = [&](Point y, double tt) {
    const double k = s.permeability(y) / s.viscosity(c(y, tt));
    Velocity u{-k * (p({y.x + h, y.y}, tt) - p({y.x - h, y.y}, tt)) / (2 * h), 0.0};
    if (two_d) u[1] = -k * (p({y.x, y.y + h}, tt) - p({y.x, y.y - h}, tt)) / (2 * h);
    return u;
  };
  auto flux = [&](Point y, double tt, int axis) {
    const Velocity u = vel(y, tt);
    const DiffusionTensor d = two_d ? diffusion_tensor(s, u, y)
                                    : DiffusionTensor{diffusion_scalar(s, u[0], y), 0, 0, 0};
    const double cx = (c({y.x + h, y.y}, tt) - c({y.x - h, y.y}, tt)) / (2 * h);
    const double cy = two_d ? (c({y.x, y.y + h}, tt) - c({y.x, y.y - h}, tt)) / (2 * h) : 0.0;
    if (axis == 0) return u[0] * c(y, tt) - (d.d11 * cx + d.d12 * cy);
    return u[1] * c(y, tt) - (d.d21 * cx + d.d22 * cy);
  };
  const double H = 1e-3;
  double div_u = (vel({x.x + H, x.y}, t)[0] - vel({x.x - H, x.y}, t)[0]) / (2 * H);
  double div_f = (flux({x.x + H, x.y}, t, 0) - flux({x.x - H, x.y}, t, 0)) / (2 * H);
  if (two_d) {
    div_u += (vel({x.x, x.y + H}, t)[1] - vel({x.x, x.y - H}, t)[1]) / (2 * H);
    div_f += (flux({x.x, x.y + H}, t, 1) - flux({x.x, x.y - H}, t, 1)) / (2 * H);
  }
  const double phi = s.porosity(x);
  const double r = phi * c(x, t);
  const double p_t = (p(x, t + h) - p(x, t - h)) / (2 * h);
  const double r_t = phi * (c(x, t + h) - c(x, t - h)) / (2 * h);
  const SourceSample src = source_terms(s, x, t, c(x, t));
  return {coeff_d_tilde(s, r, phi) * p_t + div_u - src.q,
          r_t + div_f - (src.c_tilde * src.q - s.z1 * r * p_t)};
}

}  // namespace

TEST_CASE("closed forms solve the conservative system") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> pos(0.3, kTwoPi - 0.3), time(0.0, 1.0);
  for (int id : {1, 4}) {
    for (double gamma : {1e-5, 0.5}) {
      const ProblemSpec s = make_problem(id, {gamma, 1.0});
      for (int trial = 0; trial < 20; ++trial) {
        const Point x{pos(rng), id == 4 ? pos(rng) : 0.0};
        const Residual res = residual(s, x, time(rng), id == 4);
        CHECK(std::abs(res.pressure) < 1e-5);
        CHECK(std::abs(res.concentration) < 1e-5);
      }
    }
  }
}

TEST_CASE("example 6 wells") {
  const ProblemSpec s = make_problem(6, {0.0, 2.0});
  REQUIRE(s.wells.size() == 2);
  double injected = 0.0, produced = 0.0;
  for (const Well& w : s.wells) {
    if (w.rate > 0) {
      injected += w.rate;
      CHECK(w.location.x == doctest::Approx(kTwoPi));
      CHECK(w.location.y == doctest::Approx(kTwoPi));
      CHECK(w.injected_concentration == 1.0);
    } else {
      produced -= w.rate;
      CHECK(w.location.x == 0.0);
      CHECK(w.location.y == 0.0);
    }
  }
  CHECK(injected == 2.0);
  CHECK(produced == 2.0);
}
