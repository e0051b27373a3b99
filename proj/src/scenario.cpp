#include "simrs/scenario.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "simrs/rng.hpp"

namespace simrs {

double Vec3::norm() const { return std::sqrt(dot(*this)); }

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

UpaLayout::UpaLayout(std::size_t rows, std::size_t cols, double spacing, Vec3 center)
    : rows_(rows), cols_(cols), spacing_(spacing), center_(center) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("UpaLayout: rows and cols must be >= 1");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw std::invalid_argument("UpaLayout: spacing must be positive");
}

Vec3 UpaLayout::offset(std::size_t u) const {
  const double r = static_cast<double>(u / cols_);
  const double c = static_cast<double>(u % cols_);
  const double r0 = 0.5 * static_cast<double>(rows_ - 1);
  const double c0 = 0.5 * static_cast<double>(cols_ - 1);
  return {(c - c0) * spacing_, 0.0, (r - r0) * spacing_};
}

Vec3 UpaLayout::position(std::size_t u) const { return center_ + offset(u); }

UpaLayout build_upa_layout(std::size_t rows, std::size_t cols, double spacing, Vec3 center) {
  return UpaLayout(rows, cols, spacing, center);
}

std::vector<std::size_t> split_users(std::size_t num_users, std::size_t num_clusters) {
  std::vector<std::size_t> out(num_clusters, num_users / num_clusters);
  for (std::size_t i = 0; i < num_users % num_clusters; ++i) ++out[i];
  return out;
}

std::vector<Vec3> generate_clustered_users(std::uint64_t seed, double sector_half_angle_deg,
                                           std::span<const double> cluster_radii,
                                           double cluster_diameter,
                                           std::span<const std::size_t> users_per_cluster,
                                           double user_height) {
  if (cluster_radii.empty()) throw std::invalid_argument("cluster_radii: empty");
  if (users_per_cluster.size() != cluster_radii.size())
    throw std::invalid_argument("users_per_cluster: length differs from cluster_radii");
  const std::size_t total =
      std::accumulate(users_per_cluster.begin(), users_per_cluster.end(), std::size_t{0});
  if (total == 0) throw std::invalid_argument("users_per_cluster: no users");
  if (cluster_diameter < 0.0) throw std::invalid_argument("cluster_diameter: negative");

  const double half_sector = sector_half_angle_deg * kPi / 180.0;
  const double disc_radius = 0.5 * cluster_diameter;

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Vec3> users;
  users.reserve(total);
  for (std::size_t c = 0; c < cluster_radii.size(); ++c) {
    const double rho = cluster_radii[c];
    if (!(rho > disc_radius))
      throw std::invalid_argument("cluster_radii: radius must exceed half the cluster diameter");
    // Keep the whole disc inside the sector.
    const double margin = std::asin(disc_radius / rho);
    const double span = half_sector - margin;
    if (span < 0.0) throw std::invalid_argument("sector_half_angle_deg: cluster disc does not fit");
    const double az = (2.0 * unit(rng) - 1.0) * span;
    const Vec3 center{rho * std::sin(az), rho * std::cos(az), user_height};
    for (std::size_t i = 0; i < users_per_cluster[c]; ++i) {
      const double r = disc_radius * std::sqrt(unit(rng));
      const double a = kTwoPi * unit(rng);
      users.push_back({center.x + r * std::cos(a), center.y + r * std::sin(a), user_height});
    }
  }
  return users;
}

namespace {

void require(bool ok, const char* field, const std::string& what) {
  if (!ok) throw std::invalid_argument(std::string(field) + ": " + what);
}

std::size_t square_side(std::size_t n) {
  auto s = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return s * s == n ? s : 0;
}

}  // namespace

void validate(const ScenarioConfig& c) {
  require(c.num_users >= 1, "num_users", "must be >= 1");
  require(c.num_groups <= c.num_users, "num_groups", "must not exceed num_users");
  require(c.num_layers >= 1, "num_layers", "must be >= 1");
  require(c.elements_per_layer >= 1 && square_side(c.elements_per_layer) != 0,
          "elements_per_layer", "must be a positive perfect square");
  require(c.carrier_frequency > 0.0 && std::isfinite(c.carrier_frequency), "carrier_frequency",
          "must be positive");
  require(c.transmit_power > 0.0 && std::isfinite(c.transmit_power), "transmit_power",
          "must be positive");
  require(c.noise_power > 0.0 && std::isfinite(c.noise_power), "noise_power", "must be positive");
  require(c.rician_factor >= 0.0, "rician_factor", "must be >= 0");
  require(c.layer_spacing_lambda > 0.0, "layer_spacing_lambda", "must be positive");
  require(c.element_spacing_lambda > 0.0, "element_spacing_lambda", "must be positive");
  require(c.element_area >= 0.0, "element_area", "must be >= 0");
  require(c.user_height >= 0.0, "user_height", "must be >= 0");
  require(c.sector_half_angle_deg > 0.0 && c.sector_half_angle_deg <= 90.0,
          "sector_half_angle_deg", "must be in (0, 90]");
  require(!c.cluster_radii.empty(), "cluster_radii", "empty");
  require(c.cluster_diameter >= 0.0, "cluster_diameter", "must be >= 0");
  for (double r : c.cluster_radii)
    require(r > 0.5 * c.cluster_diameter, "cluster_radii", "radius must exceed cluster_diameter/2");
  if (!c.users_per_cluster.empty()) {
    require(c.users_per_cluster.size() == c.cluster_radii.size(), "users_per_cluster",
            "length must match cluster_radii");
    require(std::accumulate(c.users_per_cluster.begin(), c.users_per_cluster.end(),
                            std::size_t{0}) == c.num_users,
            "users_per_cluster", "must sum to num_users");
  }
  require(c.path_loss_exponent > 0.0, "path_loss_exponent", "must be positive");
}

SimGeometry build_geometry(const ScenarioConfig& c) {
  SimGeometry g;
  const double lambda = c.wavelength();
  const double pitch = c.element_spacing_lambda * lambda;
  const double gap = c.layer_spacing_lambda * lambda;
  const std::size_t side = square_side(c.elements_per_layer);
  const std::size_t nt = c.stream_count();
  const auto feed_side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(nt))));

  g.num_layers = c.num_layers;
  g.elements_per_layer = c.elements_per_layer;
  g.wavelength = lambda;
  g.element_area = c.element_area > 0.0 ? c.element_area : 0.25 * lambda * lambda;
  g.feed_layout = build_upa_layout(feed_side, feed_side, pitch, c.bs_position);
  g.active_antennas = nt;
  g.layer_spacings.assign(c.num_layers, gap);
  Vec3 center = c.bs_position;
  for (std::size_t l = 0; l < c.num_layers; ++l) {
    center.y += g.layer_spacings[l];
    g.layer_layouts.push_back(build_upa_layout(side, side, pitch, center));
  }
  return g;
}

Scenario make_scenario(const ScenarioConfig& config) {
  validate(config);
  Scenario s;
  s.config = config;
  s.geometry = build_geometry(config);
  s.bs_position = config.bs_position;
  s.num_users = config.num_users;
  s.num_groups = config.num_groups;
  s.transmit_power = config.transmit_power;
  s.noise_power = config.noise_power;
  s.rician_factor = config.rician_factor;
  s.carrier_frequency = config.carrier_frequency;
  s.master_seed = config.master_seed;

  const auto per_cluster = config.users_per_cluster.empty()
                               ? split_users(config.num_users, config.cluster_radii.size())
                               : config.users_per_cluster;
  s.user_positions = generate_clustered_users(
      mix_seed({config.master_seed, static_cast<std::uint64_t>(Stream::users)}),
      config.sector_half_angle_deg, config.cluster_radii, config.cluster_diameter, per_cluster,
      config.user_height);
  return s;
}

Scenario with_num_groups(const Scenario& scenario, std::size_t num_groups) {
  if (num_groups > scenario.num_users)
    throw std::invalid_argument("num_groups: must not exceed num_users");
  Scenario s = scenario;
  s.num_groups = num_groups;
  s.config.num_groups = num_groups;
  s.geometry = build_geometry(s.config);
  return s;
}

}  // namespace simrs
