#ifndef BPDG_CONFIG_HPP_
#define BPDG_CONFIG_HPP_

#include <string>
#include <vector>

#include "bpdg/harness.hpp"

namespace bpdg {

/// Sets one field of cfg from its command-line name (without dashes), e.g.
/// apply_setting(cfg, "dt-factor", "0.05"). Throws std::invalid_argument
/// for unknown keys or malformed values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads key=value lines; '#' starts a comment. Later keys win.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Keys understood by apply_setting.
const std::vector<std::string>& config_keys();

std::vector<double> parse_double_list(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);
bool parse_switch(const std::string& s);  // on|off|true|false|1|0

}  // namespace bpdg

#endif  // BPDG_CONFIG_HPP_
