#include "simrs/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace simrs {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& value, const std::string& why) {
  throw std::invalid_argument(key + ": " + why + " ('" + value + "')");
}

// Accepts plain numbers, "inf" and simple fractions such as "5/24".
double to_double(const std::string& key, const std::string& value) {
  const auto slash = value.find('/');
  if (slash != std::string::npos)
    return to_double(key, trim(value.substr(0, slash))) / to_double(key, trim(value.substr(slash + 1)));
  if (value == "inf") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    bad(key, value, "not a number");
  }
  if (pos != value.size()) bad(key, value, "trailing characters");
  return v;
}

std::uint64_t to_uint(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  if (value.empty() || value[0] == '-') bad(key, value, "not a non-negative integer");
  try {
    v = std::stoull(value, &pos);
  } catch (const std::exception&) {
    bad(key, value, "not a non-negative integer");
  }
  if (pos != value.size()) bad(key, value, "trailing characters");
  return v;
}

template <class T, class F>
std::vector<T> to_list(const std::string& value, F convert) {
  std::vector<T> out;
  std::istringstream is(value);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(convert(trim(tok)));
  return out;
}

using Setter = std::function<void(const std::string& key, const std::string& value, ScenarioConfig&,
                                  ao::SolveOptions&, double& spacing_m)>;

#define SCN_D(name, field) \
  {name, [](auto& k, auto& v, ScenarioConfig& s, ao::SolveOptions&, double&) { s.field = to_double(k, v); }}
#define SCN_U(name, field) \
  {name, [](auto& k, auto& v, ScenarioConfig& s, ao::SolveOptions&, double&) { s.field = to_uint(k, v); }}
#define SOL_D(name, field) \
  {name, [](auto& k, auto& v, ScenarioConfig&, ao::SolveOptions& o, double&) { o.field = to_double(k, v); }}
#define SOL_U(name, field) \
  {name, [](auto& k, auto& v, ScenarioConfig&, ao::SolveOptions& o, double&) { o.field = to_uint(k, v); }}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      SCN_U("num_users", num_users),
      SCN_U("num_groups", num_groups),
      SCN_U("num_layers", num_layers),
      SCN_U("elements_per_layer", elements_per_layer),
      SCN_D("carrier_frequency", carrier_frequency),
      SCN_D("transmit_power", transmit_power),
      {"transmit_power_dbm",
       [](auto& k, auto& v, ScenarioConfig& s, ao::SolveOptions&, double&) {
         s.transmit_power = dbm_to_watt(to_double(k, v));
       }},
      SCN_D("noise_power", noise_power),
      {"noise_power_dbm",
       [](auto& k, auto& v, ScenarioConfig& s, ao::SolveOptions&, double&) {
         s.noise_power = dbm_to_watt(to_double(k, v));
       }},
      SCN_D("rician_factor", rician_factor),
      {"rician_factor_db",
       [](auto& k, auto& v, ScenarioConfig& s, ao::SolveOptions&, double&) {
         s.rician_factor = db_to_linear(to_double(k, v));
       }},
      SCN_D("layer_spacing_lambda", layer_spacing_lambda),
      {"layer_spacing",
       [](auto& k, auto& v, ScenarioConfig&, ao::SolveOptions&, double& m) { m = to_double(k, v); }},
      SCN_D("element_spacing_lambda", element_spacing_lambda),
      SCN_D("element_area", element_area),
      SCN_D("bs_x", bs_position.x),
      SCN_D("bs_y", bs_position.y),
      SCN_D("bs_z", bs_position.z),
      SCN_D("user_height", user_height),
      SCN_D("sector_half_angle_deg", sector_half_angle_deg),
      {"cluster_radii",
       [](auto& k, auto& v, ScenarioConfig& s, ao::SolveOptions&, double&) {
         s.cluster_radii = to_list<double>(v, [&](const std::string& t) { return to_double(k, t); });
       }},
      SCN_D("cluster_diameter", cluster_diameter),
      {"users_per_cluster",
       [](auto& k, auto& v, ScenarioConfig& s, ao::SolveOptions&, double&) {
         s.users_per_cluster = to_list<std::size_t>(
             v, [&](const std::string& t) { return static_cast<std::size_t>(to_uint(k, t)); });
       }},
      SCN_D("path_loss_exponent", path_loss_exponent),
      SCN_U("hbf_antennas", hbf_antennas),
      SCN_U("master_seed", master_seed),
      SOL_U("max_iterations", max_iterations),
      SOL_D("conv_eps", conv_eps),
      SOL_U("stagnation_window", stagnation_window),
      SOL_U("grouping_period", grouping_period),
      SOL_U("refine_rounds", refine_rounds),
      SOL_D("phase_a", phase_gains.a),
      SOL_D("phase_A", phase_gains.A),
      SOL_D("phase_alpha", phase_gains.alpha),
      SOL_D("phase_c", phase_gains.c),
      SOL_D("phase_gamma", phase_gains.gamma),
      SOL_D("power_a", power_gains.a),
      SOL_D("power_A", power_gains.A),
      SOL_D("power_alpha", power_gains.alpha),
      SOL_D("power_c", power_gains.c),
      SOL_D("power_gamma", power_gains.gamma),
      SOL_U("kmeans_replicates", kmeans.replicates),
      SOL_U("kmeans_max_iters", kmeans.max_iters),
      SOL_U("solver_seed", seed),
      {"feature_mode",
       [](auto& k, auto& v, ScenarioConfig&, ao::SolveOptions& o, double&) {
         if (v == "reim")
           o.features = grouping::FeatureMode::reim;
         else if (v == "magnitude")
           o.features = grouping::FeatureMode::magnitude;
         else
           bad(k, v, "expected reim or magnitude");
       }},
  };
  return table;
}

#undef SCN_D
#undef SCN_U
#undef SOL_D
#undef SOL_U

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap out;
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

ConfigMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_config(const ConfigMap& config, ScenarioConfig& scenario, ao::SolveOptions& solver) {
  const auto& table = setters();
  double spacing_m = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [key, value] : config) {
    const auto it = table.find(key);
    if (it == table.end()) throw std::invalid_argument(key + ": unknown configuration key");
    it->second(key, value, scenario, solver, spacing_m);
  }
  // Absolute spacing depends on the (possibly overridden) carrier.
  if (!std::isnan(spacing_m)) scenario.layer_spacing_lambda = spacing_m / scenario.wavelength();
}

std::vector<std::string> known_config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, v] : setters()) keys.push_back(k);
  return keys;
}

double parse_number(const std::string& text) { return to_double("value", trim(text)); }

}  // namespace simrs
