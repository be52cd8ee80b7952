#ifndef BPDG_PRESETS_HPP_
#define BPDG_PRESETS_HPP_

#include <string>
#include <vector>

#include "bpdg/physics.hpp"

namespace bpdg {

/// Tunable parameters of the built-in examples.
struct PresetParams {
  double gamma = 0.0;      // diffusion / amplitude parameter of examples 1, 2 and 4
  double well_rate = 1.0;  // |q0| of the two wells in example 6
};

struct ExamplePreset {
  int id = 0;
  int dim = 1;
  std::string title;
  std::string parameters;  // one-line human-readable parameter list
  int default_n = 80;
  double default_t = 1.0;
  double dt_factor = 0.0;  // dt = dt_factor * min(dx^2, dy^2)
  double default_gamma = 0.0;
  bool has_exact = false;
};

/// The six examples, ordered by id.
const std::vector<ExamplePreset>& example_presets();

/// Throws std::invalid_argument for ids outside 1..6.
const ExamplePreset& example_preset(int id);

ProblemSpec make_problem(int id, const PresetParams& params);

}  // namespace bpdg

#endif  // BPDG_PRESETS_HPP_
