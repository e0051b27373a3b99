#pragma once

#include <map>
#include <string>
#include <vector>

#include "simrs/ao.hpp"
#include "simrs/scenario.hpp"

namespace simrs {

// Flat `key = value` text, `#` starts a comment. Later keys override earlier ones.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

// Applies overrides to both records. Unknown keys and malformed values throw
// std::invalid_argument naming the key. Power and gain keys accept `_dbm`/`_db`
// variants (e.g. transmit_power_dbm, rician_factor_db).
void apply_config(const ConfigMap& config, ScenarioConfig& scenario, ao::SolveOptions& solver);

std::vector<std::string> known_config_keys();

// Number syntax shared by config values and CLI lists: decimals, "inf", "a/b".
double parse_number(const std::string& text);

}  // namespace simrs
