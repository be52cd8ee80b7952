// Command line front end: run one example, run a convergence study, or
// list the built-in examples.

#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bpdg/config.hpp"
#include "bpdg/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitBlowup = 2;

struct Settings {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> overrides;
};

const char* help_for(const std::string& key) {
  if (key == "example") return "example id 1..6";
  if (key == "n") return "cells per direction";
  if (key == "nx") return "cells in x (2D)";
  if (key == "ny") return "cells in y (2D)";
  if (key == "T") return "final time";
  if (key == "dt-factor") return "dt = factor * min(dx^2, dy^2)";
  if (key == "adaptive") return "on: dt from the bound-preserving step conditions";
  if (key == "safety") return "safety factor for adaptive dt";
  if (key == "limiter") return "on|off";
  if (key == "epsilon") return "limiter epsilon";
  if (key == "flux") return "upwind+|upwind-|central";
  if (key == "integrator") return "euler|rk3|ms3";
  if (key == "gamma") return "example parameter gamma";
  if (key == "well-rate") return "well rate q0 (example 6)";
  if (key == "out") return "output directory";
  if (key == "snapshots") return "comma-separated extra output times";
  if (key == "ns") return "comma-separated resolutions (converge)";
  return "";
}

void add_settings(CLI::App* cmd, Settings& s, bool with_ns) {
  cmd->add_option("--config", s.config_file, "key=value file; flags override it");
  for (const std::string& key : bpdg::config_keys()) {
    if (key == "ns" && !with_ns) continue;
    cmd->add_option_function<std::string>(
        "--" + key, [&s, key](const std::string& v) { s.overrides.emplace_back(key, v); },
        help_for(key));
  }
}

bpdg::RunConfig resolve(const Settings& s) {
  bpdg::RunConfig cfg;
  if (!s.config_file.empty()) cfg = bpdg::load_config_file(s.config_file, cfg);
  for (const auto& [k, v] : s.overrides) bpdg::apply_setting(cfg, k, v);
  return cfg;
}

int do_run(const Settings& s) {
  const bpdg::RunConfig cfg = resolve(s);
  const bpdg::RunSummary sum = bpdg::run(cfg);
  std::cout << sum.to_text();
  if (sum.blew_up) {
    std::cerr << "blow-up at t=" << sum.blowup_time << ": " << sum.blowup_reason << "\n";
  }
  return sum.blew_up ? kExitBlowup : kExitOk;
}

int do_converge(const Settings& s) {
  const bpdg::RunConfig cfg = resolve(s);
  const bpdg::ConvergenceReport rep = bpdg::convergence_study(cfg, cfg.ns);
  std::cout << rep.to_text();
  for (const auto& row : rep.rows) {
    if (row.blew_up) return kExitBlowup;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound-preserving DG solver for compressible miscible displacement"};
  app.require_subcommand(1);

  Settings run_settings;
  Settings conv_settings;
  CLI::App* run_cmd = app.add_subcommand("run", "run one example to its final time");
  add_settings(run_cmd, run_settings, false);
  CLI::App* conv_cmd = app.add_subcommand("converge", "L-infinity convergence study");
  add_settings(conv_cmd, conv_settings, true);
  CLI::App* list_cmd = app.add_subcommand("list-examples", "print the built-in examples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (list_cmd->parsed()) {
      std::cout << bpdg::list_examples();
      return kExitOk;
    }
    if (run_cmd->parsed()) return do_run(run_settings);
    return do_converge(conv_settings);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
