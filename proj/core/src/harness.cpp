#include "bpdg/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace bpdg {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

}  // namespace

int RunConfig::cells_x() const {
  if (nx) return *nx;
  if (n) return *n;
  return example_preset(example).default_n;
}

int RunConfig::cells_y() const {
  if (ny) return *ny;
  if (n) return *n;
  return example_preset(example).default_n;
}

double RunConfig::resolved_final_time() const {
  return final_time ? *final_time : example_preset(example).default_t;
}

double RunConfig::resolved_dt_factor() const {
  return dt_factor ? *dt_factor : example_preset(example).dt_factor;
}

double RunConfig::resolved_gamma() const {
  return gamma ? *gamma : example_preset(example).default_gamma;
}

void RunConfig::validate() const {
  const ExamplePreset& p = example_preset(example);
  if (cells_x() < 4 || (p.dim == 2 && cells_y() < 4)) {
    throw std::invalid_argument("need at least 4 cells per direction");
  }
  if (!(resolved_final_time() > 0.0)) throw std::invalid_argument("final time must be positive");
  if (!adaptive && !(resolved_dt_factor() > 0.0)) {
    throw std::invalid_argument("dt factor must be positive");
  }
  if (!(safety > 0.0 && safety <= 1.0)) throw std::invalid_argument("safety must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  for (double t : snapshots) {
    if (!(t > 0.0 && t < resolved_final_time())) {
      throw std::invalid_argument("snapshot times must lie in (0, T)");
    }
  }
}

std::string RunSummary::to_text() const {
  std::ostringstream o;
  o << "example=" << example << "\n"
    << "dim=" << dim << "\n"
    << "nx=" << nx << "\n";
  if (dim == 2) o << "ny=" << ny << "\n";
  o << "dt=" << fmt(dt) << "\n"
    << "final_time=" << fmt(final_time) << "\n"
    << "t_reached=" << fmt(t_reached) << "\n"
    << "steps=" << steps << "\n"
    << "rejections=" << rejections << "\n"
    << "blew_up=" << (blew_up ? "true" : "false") << "\n";
  if (blew_up) {
    o << "blowup_time=" << fmt(blowup_time) << "\n"
      << "blowup_reason=" << blowup_reason << "\n";
  }
  o << "c_min=" << fmt(c_min) << "\n"
    << "c_max=" << fmt(c_max) << "\n";
  if (linf_error_c) o << "linf_error_c=" << fmt(*linf_error_c) << "\n";
  if (linf_error_p) o << "linf_error_p=" << fmt(*linf_error_p) << "\n";
  return o.str();
}

double linf_error(const Field1D& f, const Mesh1D& mesh, const ScalarFunction& exact) {
  const auto rule = gauss2();
  const std::array<double, 4> xis{-0.5, rule.points[0], rule.points[1], 0.5};
  double e = 0.0;
  for (int j = 0; j < mesh.n_cells(); ++j) {
    for (double xi : xis) {
      e = std::max(e, std::abs(f.value(j, xi) - exact({mesh.map(j, xi), 0.0})));
    }
  }
  return e;
}

double linf_error(const Field2D& f, const Mesh2D& mesh, const ScalarFunction& exact) {
  const auto rule = gauss2();
  const std::array<double, 4> xis{-0.5, rule.points[0], rule.points[1], 0.5};
  double e = 0.0;
  for (int cell = 0; cell < mesh.n_cells(); ++cell) {
    for (double eta : xis) {
      for (double xi : xis) {
        const bool corner = std::abs(xi) == 0.5 && std::abs(eta) == 0.5;
        const bool gauss = std::abs(xi) < 0.5 && std::abs(eta) < 0.5;
        if (!corner && !gauss) continue;
        e = std::max(e, std::abs(f.value(cell, xi, eta) - exact(mesh.map(cell, xi, eta))));
      }
    }
  }
  return e;
}

std::string field_csv(const Scheme1D& scheme, const State1D& s) {
  const Field1D c = scheme.concentration(s);
  const auto u = scheme.solve_velocity(s, c);
  std::ostringstream o;
  o << "x,c,p,u1\n";
  const Mesh1D& m = scheme.mesh();
  for (int j = 0; j < m.n_cells(); ++j) {
    const auto pts = cell_corners(m, j);
    for (int k = 0; k < 2; ++k) {
      o << fmt(pts[k].x) << "," << fmt(c[j][k]) << "," << fmt(s.p[j][k]) << ","
        << fmt(u[0][j][k]) << "\n";
    }
  }
  return o.str();
}

std::string field_csv(const Scheme2D& scheme, const State2D& s) {
  const Field2D c = scheme.concentration(s);
  const auto u = scheme.solve_velocity(s, c);
  std::ostringstream o;
  o << "x,y,c,p,u1,u2\n";
  const Mesh2D& m = scheme.mesh();
  for (int cell = 0; cell < m.n_cells(); ++cell) {
    const auto pts = cell_corners(m, cell);
    for (int k = 0; k < 4; ++k) {
      o << fmt(pts[k].x) << "," << fmt(pts[k].y) << "," << fmt(c[cell][k]) << ","
        << fmt(s.p[cell][k]) << "," << fmt(u[0][cell][k]) << "," << fmt(u[1][cell][k]) << "\n";
    }
  }
  return o.str();
}

namespace {

template <int Dim>
Profile profile_of(const DGField<Dim>& c, const MeshFor<Dim>& mesh) {
  Profile out;
  out.reserve(static_cast<std::size_t>(c.n_cells() * kCorners<Dim>));
  for (int cell = 0; cell < c.n_cells(); ++cell) {
    const auto pts = cell_corners(mesh, cell);
    for (int k = 0; k < kCorners<Dim>; ++k) out.push_back({pts[k].x, pts[k].y, c[cell][k]});
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%.6g.csv", t);
  return buf;
}

template <class Scheme>
Scheme build_scheme(const RunConfig& cfg, ProblemSpec spec);

template <>
Scheme1D build_scheme<Scheme1D>(const RunConfig& cfg, ProblemSpec spec) {
  return Scheme1D(build_mesh_1d(cfg.cells_x()), std::move(spec), FluxPair{cfg.flux});
}

template <>
Scheme2D build_scheme<Scheme2D>(const RunConfig& cfg, ProblemSpec spec) {
  return Scheme2D(build_mesh_2d(cfg.cells_x(), cfg.cells_y()), std::move(spec),
                  FluxPair{cfg.flux});
}

double min_spacing_sq(const Mesh1D& m) { return m.dx() * m.dx(); }
double min_spacing_sq(const Mesh2D& m) { return std::min(m.dx() * m.dx(), m.dy() * m.dy()); }

template <class Scheme>
RunSummary run_impl(const RunConfig& cfg) {
  using StateT = typename Scheme::StateType;
  constexpr int kDim = Scheme::kDim;

  PresetParams params;
  params.gamma = cfg.resolved_gamma();
  params.well_rate = cfg.well_rate;
  const Scheme scheme = build_scheme<Scheme>(cfg, make_problem(cfg.example, params));

  RunSummary sum;
  sum.example = cfg.example;
  sum.dim = kDim;
  sum.nx = cfg.cells_x();
  sum.ny = kDim == 2 ? cfg.cells_y() : 1;
  sum.final_time = cfg.resolved_final_time();

  LimiterConfig lim;
  lim.enabled = cfg.limiter;
  lim.epsilon = cfg.epsilon;
  TimeIntegrator<Scheme> integ(scheme, cfg.integrator, lim);
  AdaptiveDriver<Scheme> driver(integ, cfg.safety);
  const double dt_fixed = cfg.resolved_dt_factor() * min_spacing_sq(scheme.mesh());
  sum.dt = dt_fixed;

  std::filesystem::path out;
  if (!cfg.out_dir.empty()) {
    out = cfg.out_dir;
    std::filesystem::create_directories(out);
  }

  StateT s = scheme.initial_state();
  auto track = [&](const StateT& st) {
    const auto c = concentration_from_r(st.r, scheme.porosity());
    const double lo = c.min_corner();
    const double hi = c.max_corner();
    if (!st.r.all_finite() || !st.p.all_finite() || !std::isfinite(lo) || !std::isfinite(hi)) {
      throw SchemeBreakdown("non-finite solution");
    }
    if (std::max(std::abs(lo), std::abs(hi)) > kBlowupConcentration) {
      throw SchemeBreakdown("|c| exceeded " + fmt_short(kBlowupConcentration));
    }
    sum.c_min = std::min(sum.c_min, lo);
    sum.c_max = std::max(sum.c_max, hi);
  };
  {
    const auto c0 = concentration_from_r(s.r, scheme.porosity());
    sum.c_min = c0.min_corner();
    sum.c_max = c0.max_corner();
  }

  std::vector<double> targets = cfg.snapshots;
  std::sort(targets.begin(), targets.end());
  targets.push_back(sum.final_time);

  try {
    for (double target : targets) {
      while (s.t < target) {
        const double remaining = target - s.t;
        if (cfg.adaptive) {
          sum.dt = driver.advance(s, remaining);
        } else {
          // Land exactly on the target instead of leaving a sliver step.
          const double h = remaining <= dt_fixed * (1.0 + 1e-9) ? remaining : dt_fixed;
          s = integ.step(s, h);
        }
        if (target - s.t <= 1e-12 * std::max(1.0, target)) s.t = target;
        ++sum.steps;
        track(s);
      }
      if (!out.empty()) {
        const std::string name = snapshot_name(target);
        write_file(out / name, field_csv(scheme, s));
        sum.files.push_back(name);
      }
    }
  } catch (const SchemeBreakdown& e) {
    sum.blew_up = true;
    sum.blowup_time = s.t;
    sum.blowup_reason = e.what();
  } catch (const BoundViolation& e) {
    sum.blew_up = true;
    sum.blowup_time = s.t;
    sum.blowup_reason = std::string("bound violation: ") + e.what();
  }
  sum.t_reached = s.t;
  sum.rejections = driver.rejections();

  const auto c = concentration_from_r(s.r, scheme.porosity());
  sum.final_profile = profile_of<kDim>(c, scheme.mesh());
  const ProblemSpec& spec = scheme.spec();
  if (spec.exact && !sum.blew_up) {
    const double t = s.t;
    sum.linf_error_c =
        linf_error(c, scheme.mesh(), [&](Point x) { return spec.exact(x, t).c; });
    sum.linf_error_p =
        linf_error(s.p, scheme.mesh(), [&](Point x) { return spec.exact(x, t).p; });
  }
  if (!out.empty()) {
    write_file(out / "summary.txt", sum.to_text());
    sum.files.push_back("summary.txt");
  }
  return sum;
}

}  // namespace

RunSummary run(const RunConfig& cfg) {
  cfg.validate();
  if (example_preset(cfg.example).dim == 1) return run_impl<Scheme1D>(cfg);
  return run_impl<Scheme2D>(cfg);
}

double observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  return std::log(e_coarse / e_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

ConvergenceReport convergence_study(const RunConfig& base, const std::vector<int>& ns) {
  const ExamplePreset& p = example_preset(base.example);
  if (!p.has_exact) {
    throw std::invalid_argument("example " + std::to_string(base.example) +
                                " has no exact solution");
  }
  if (ns.empty()) throw std::invalid_argument("no resolutions given");
  ConvergenceReport rep;
  rep.example = base.example;
  for (int n : ns) {
    RunConfig cfg = base;
    cfg.n = n;
    cfg.nx.reset();
    cfg.ny.reset();
    if (!base.out_dir.empty()) {
      cfg.out_dir = (std::filesystem::path(base.out_dir) / ("n" + std::to_string(n))).string();
    }
    const RunSummary s = run(cfg);
    ConvergenceRow row;
    row.n = n;
    row.blew_up = s.blew_up;
    row.error = s.linf_error_c.value_or(std::numeric_limits<double>::quiet_NaN());
    if (!rep.rows.empty()) {
      const ConvergenceRow& prev = rep.rows.back();
      row.order = observed_order(prev.error, row.error, prev.n, n);
    }
    rep.rows.push_back(row);
  }
  if (!base.out_dir.empty()) {
    std::filesystem::create_directories(base.out_dir);
    write_file(std::filesystem::path(base.out_dir) / "convergence.csv", rep.to_csv());
  }
  return rep;
}

std::string ConvergenceReport::to_csv() const {
  std::ostringstream o;
  o << "n,linf_error,order\n";
  for (const auto& r : rows) {
    o << r.n << "," << fmt(r.error) << ",";
    if (r.order) o << fmt(*r.order);
    o << "\n";
  }
  return o.str();
}

std::string ConvergenceReport::to_text() const {
  std::ostringstream o;
  o << "example " << example << "\n";
  o << "     N     Linf error   order\n";
  for (const auto& r : rows) {
    char buf[96];
    if (r.order) {
      std::snprintf(buf, sizeof buf, "%6d   %.3e   %5.2f\n", r.n, r.error, *r.order);
    } else {
      std::snprintf(buf, sizeof buf, "%6d   %.3e      --\n", r.n, r.error);
    }
    o << buf;
  }
  return o.str();
}

std::string list_examples() {
  std::ostringstream o;
  for (const auto& p : example_presets()) {
    o << p.id << ". " << p.title << " (" << p.dim << "D, N=" << p.default_n
      << ", T=" << p.default_t << ", dt=" << p.dt_factor << (p.dim == 1 ? "·Δx²" : "·min(Δx²,Δy²)");
    if (p.default_gamma != 0.0) o << ", γ=" << p.default_gamma;
    o << ")\n   " << p.parameters << "\n";
  }
  return o.str();
}

}  // namespace bpdg
