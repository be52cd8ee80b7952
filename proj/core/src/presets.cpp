#include "bpdg/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace bpdg {

const std::vector<ExamplePreset>& example_presets() {
  static const std::vector<ExamplePreset> presets = {
      {1, 1, "1D manufactured solution",
       "z₁=z₂=1, φ=1, κ=μ=1, D=γ, q=e^(-t), c₀=(1-cos x)/2, p₀=cos x-1", 80, 1.0, 0.05, 1e-5,
       true},
      {2, 1, "1D pure transport, variable porosity",
       "z₁=0.35, z₂=μ=κ=1, φ=(3+cos x)/4, D=0, q=0, c₀=(cos x+1)/2, p₀=-γ cos x", 80, 0.1, 0.01,
       1.0, false},
      {3, 1, "1D step profile",
       "z₁=0.1, z₂=κ=μ=1, φ=1, D=0, q=0, c₀=1 for x<1 else 0, p₀=5 for x<1 else 0", 80, 1.0,
       0.001, 0.0, false},
      {4, 2, "2D manufactured solution",
       "z₁=z₂=1, φ=κ=μ=1, D=γI, q=2e^(-2t), c₀=(1-cos x cos y)/2, p₀=cos x cos y-1", 40, 0.01,
       0.02, 1e-3, true},
      {5, 2, "2D corner block",
       "z₁=0.1, z₂=κ=μ=1, φ=1, D=0, q=0, c₀=1 on (0,1)² else 0, p₀=5 on (0,1)² else 0", 40, 0.5,
       0.001, 0.0, false},
      {6, 2, "2D injection and production wells",
       "z₁=0.4, z₂=0.6, φ=κ=μ=1, D=|u|I, c₀=0.5, p₀=0, injection well at (2π,2π) with c̃=1, "
       "production well at (0,0)",
       50, 1.0, 0.01, 0.0, false},
  };
  return presets;
}

const ExamplePreset& example_preset(int id) {
  for (const auto& p : example_presets()) {
    if (p.id == id) return p;
  }
  throw std::invalid_argument("unknown example " + std::to_string(id) + " (expected 1..6)");
}

ProblemSpec make_problem(int id, const PresetParams& params) {
  const double gamma = params.gamma;
  ProblemSpec s;
  s.name = "example-" + std::to_string(id);
  switch (id) {
    case 1:
      s.d_mol = gamma;
      s.source = [](Point, double t) { return std::exp(-t); };
      s.injected_concentration = [gamma](Point x, double t) {
        const double sn = std::sin(x.x);
        return 0.5 * (std::exp(-gamma * t) * (sn * sn - std::cos(x.x)) + 1.0);
      };
      s.initial_concentration = [](Point x) { return 0.5 * (1.0 - std::cos(x.x)); };
      s.initial_pressure = [](Point x) { return std::cos(x.x) - 1.0; };
      s.exact = [gamma](Point x, double t) { return exact_solution(1, x, t, gamma); };
      break;
    case 2:
      s.z1 = 0.35;
      s.porosity = [](Point x) { return 0.25 * (3.0 + std::cos(x.x)); };
      s.initial_concentration = [](Point x) { return 0.5 * (std::cos(x.x) + 1.0); };
      s.initial_pressure = [gamma](Point x) { return -gamma * std::cos(x.x); };
      break;
    case 3:
      s.z1 = 0.1;
      s.initial_concentration = [](Point x) { return x.x < 1.0 ? 1.0 : 0.0; };
      s.initial_pressure = [](Point x) { return x.x < 1.0 ? 5.0 : 0.0; };
      break;
    case 4:
      s.d_mol = gamma;
      s.source = [](Point, double t) { return 2.0 * std::exp(-2.0 * t); };
      s.injected_concentration = [gamma](Point x, double t) {
        const double cx = std::cos(x.x), cy = std::cos(x.y);
        const double sx = std::sin(x.x), sy = std::sin(x.y);
        const double shape = 0.5 * sx * sx * cy * cy + 0.5 * cx * cx * sy * sy - cx * cy;
        return 0.5 * (std::exp(-2.0 * gamma * t) * shape + 1.0);
      };
      s.initial_concentration = [](Point x) {
        return 0.5 * (1.0 - std::cos(x.x) * std::cos(x.y));
      };
      s.initial_pressure = [](Point x) { return std::cos(x.x) * std::cos(x.y) - 1.0; };
      s.exact = [gamma](Point x, double t) { return exact_solution(4, x, t, gamma); };
      break;
    case 5: {
      s.z1 = 0.1;
      // Nodes on x = 0 or y = 0 belong to the block.
      auto block = [](Point x) { return x.x < 1.0 && x.y < 1.0; };
      s.initial_concentration = [block](Point x) { return block(x) ? 1.0 : 0.0; };
      s.initial_pressure = [block](Point x) { return block(x) ? 5.0 : 0.0; };
      break;
    }
    case 6:
      s.z1 = 0.4;
      s.z2 = 0.6;
      s.d_long = 1.0;
      s.d_tran = 1.0;
      s.initial_concentration = [](Point) { return 0.5; };
      s.wells = {Well{{kTwoPi, kTwoPi}, params.well_rate, 1.0},
                 Well{{0.0, 0.0}, -params.well_rate, 0.0}};
      break;
    default:
      throw std::invalid_argument("unknown example " + std::to_string(id) + " (expected 1..6)");
  }
  return s;
}

}  // namespace bpdg
