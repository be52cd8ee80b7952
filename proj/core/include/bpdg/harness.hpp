#ifndef BPDG_HARNESS_HPP_
#define BPDG_HARNESS_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bpdg/field.hpp"
#include "bpdg/mesh.hpp"
#include "bpdg/physics.hpp"
#include "bpdg/presets.hpp"
#include "bpdg/scheme.hpp"
#include "bpdg/stepper.hpp"

namespace bpdg {

/// One experiment. Unset optionals take the example's preset value.
struct RunConfig {
  int example = 1;
  std::optional<int> n;   // cells per direction
  std::optional<int> nx;  // overrides n in x (2D)
  std::optional<int> ny;
  std::optional<double> final_time;
  std::optional<double> dt_factor;  // dt = factor * min(dx^2, dy^2)
  bool adaptive = false;            // dt from the bound-preserving conditions
  double safety = 0.9;
  bool limiter = true;
  double epsilon = 1e-13;
  FluxVariant flux = FluxVariant::UpwindPlus;
  Integrator integrator = Integrator::SspRk3;
  std::optional<double> gamma;
  double well_rate = 1.0;
  std::string out_dir;            // empty: write nothing
  std::vector<double> snapshots;  // extra output times before the final one
  std::vector<int> ns{20, 40, 80, 160};  // convergence studies only

  int cells_x() const;
  int cells_y() const;
  double resolved_final_time() const;
  double resolved_dt_factor() const;
  double resolved_gamma() const;
  /// Throws std::invalid_argument on inconsistent values.
  void validate() const;
};

/// A sampled concentration profile: (x, y, c) at every cell corner.
using Profile = std::vector<std::array<double, 3>>;

struct RunSummary {
  int example = 0;
  int dim = 1;
  int nx = 0;
  int ny = 0;
  double dt = 0.0;  // fixed step, or the last adaptive step
  double final_time = 0.0;
  double t_reached = 0.0;
  long steps = 0;
  int rejections = 0;
  bool blew_up = false;
  double blowup_time = 0.0;
  std::string blowup_reason;
  double c_min = 0.0;  // over every accepted state of the run
  double c_max = 0.0;
  std::optional<double> linf_error_c;
  std::optional<double> linf_error_p;
  Profile final_profile;
  std::vector<std::string> files;

  int exit_code() const { return blew_up ? 2 : 0; }
  /// key=value lines.
  std::string to_text() const;
};

/// Blow-up thresholds: any non-finite value or |c| above this.
inline constexpr double kBlowupConcentration = 1e6;

RunSummary run(const RunConfig& cfg);

/// Max |f - exact| over all cell corners and volume Gauss nodes.
double linf_error(const Field1D& f, const Mesh1D& mesh, const ScalarFunction& exact);
double linf_error(const Field2D& f, const Mesh2D& mesh, const ScalarFunction& exact);

struct ConvergenceRow {
  int n = 0;
  double error = 0.0;
  std::optional<double> order;  // against the previous row
  bool blew_up = false;
};

struct ConvergenceReport {
  int example = 0;
  std::vector<ConvergenceRow> rows;

  std::string to_csv() const;
  std::string to_text() const;
};

/// Runs the base configuration for every n in ns (examples with an exact
/// solution only) and reports the L-infinity error of c at the final time.
ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& ns);

/// Observed order log(e_coarse / e_fine) / log(n_fine / n_coarse).
double observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine);

/// Human-readable catalogue of the six presets.
std::string list_examples();

/// Corner-value CSV of one state: x[,y],c,p,u1[,u2].
std::string field_csv(const Scheme1D& scheme, const State1D& s);
std::string field_csv(const Scheme2D& scheme, const State2D& s);

}  // namespace bpdg

#endif  // BPDG_HARNESS_HPP_
