#include "bpdg/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bpdg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  return v;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& item : split_commas(s)) out.push_back(to_double(item));
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const auto& item : split_commas(s)) out.push_back(to_int(item));
  return out;
}

bool parse_switch(const std::string& s) {
  if (s == "on" || s == "true" || s == "1") return true;
  if (s == "off" || s == "false" || s == "0") return false;
  throw std::invalid_argument("expected on or off, got '" + s + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "example", "n",       "nx",    "ny",         "T",   "dt-factor", "adaptive", "safety",
      "limiter", "epsilon", "flux",  "integrator", "gamma", "well-rate", "out",    "snapshots",
      "ns"};
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "example") {
    cfg.example = to_int(value);
  } else if (key == "n") {
    cfg.n = to_int(value);
  } else if (key == "nx") {
    cfg.nx = to_int(value);
  } else if (key == "ny") {
    cfg.ny = to_int(value);
  } else if (key == "T") {
    cfg.final_time = to_double(value);
  } else if (key == "dt-factor") {
    cfg.dt_factor = to_double(value);
  } else if (key == "adaptive") {
    cfg.adaptive = parse_switch(value);
  } else if (key == "safety") {
    cfg.safety = to_double(value);
  } else if (key == "limiter") {
    cfg.limiter = parse_switch(value);
  } else if (key == "epsilon") {
    cfg.epsilon = to_double(value);
  } else if (key == "flux") {
    cfg.flux = parse_flux_variant(value);
  } else if (key == "integrator") {
    cfg.integrator = parse_integrator(value);
  } else if (key == "gamma") {
    cfg.gamma = to_double(value);
  } else if (key == "well-rate") {
    cfg.well_rate = to_double(value);
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "snapshots") {
    cfg.snapshots = parse_double_list(value);
  } else if (key == "ns") {
    cfg.ns = parse_int_list(value);
  } else {
    throw std::invalid_argument("unknown key '" + key + "'");
  }
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
    }
    try {
      apply_setting(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), std::move(base));
}

}  // namespace bpdg
