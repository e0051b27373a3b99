#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "simrs/types.hpp"

namespace simrs {

// Uniform planar array parallel to the x-z plane (normal along +y).
// Element u sits at row u / cols, column u % cols of a grid centered on `center`.
class UpaLayout {
 public:
  UpaLayout() = default;
  UpaLayout(std::size_t rows, std::size_t cols, double spacing, Vec3 center);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_ * cols_; }
  double spacing() const { return spacing_; }
  const Vec3& center() const { return center_; }
  Vec3 normal() const { return {0.0, 1.0, 0.0}; }

  Vec3 position(std::size_t u) const;
  // Offset of element u from the array center.
  Vec3 offset(std::size_t u) const;

 private:
  std::size_t rows_ = 1;
  std::size_t cols_ = 1;
  double spacing_ = 1.0;
  Vec3 center_{};
};

UpaLayout build_upa_layout(std::size_t rows, std::size_t cols, double spacing, Vec3 center);

struct SimGeometry {
  std::size_t num_layers = 0;
  std::size_t elements_per_layer = 0;
  UpaLayout feed_layout;
  std::size_t active_antennas = 0;  // N_t; the first N_t feed elements in row-major order
  std::vector<UpaLayout> layer_layouts;
  std::vector<double> layer_spacings;  // d_1 is the feed-to-first-layer gap
  double element_area = 0.0;
  double wavelength = 0.0;

  const UpaLayout& last_layer() const { return layer_layouts.back(); }
};

// Parsed configuration record. Field defaults reproduce the reference
// simulation table (K=6, N=2, L=7, U=64 at 28 GHz).
struct ScenarioConfig {
  std::size_t num_users = 6;
  std::size_t num_groups = 2;
  std::size_t num_layers = 7;
  std::size_t elements_per_layer = 64;
  double carrier_frequency = 28e9;
  double transmit_power = 0.1;       // W (20 dBm)
  double noise_power = 3.981071705534972e-13;  // W (-94 dBm)
  double rician_factor = 19.952623149688797;   // linear (13 dB)
  double layer_spacing_lambda = 0.25;
  double element_spacing_lambda = 0.5;
  double element_area = 0.0;  // m^2; 0 selects (lambda/2)^2
  Vec3 bs_position{0.0, 0.0, 10.0};
  double user_height = 1.5;
  double sector_half_angle_deg = 30.0;
  std::vector<double> cluster_radii{30.0, 300.0};
  double cluster_diameter = 10.0;
  std::vector<std::size_t> users_per_cluster;  // empty: split K evenly, earlier clusters first
  double path_loss_exponent = 2.0;
  std::size_t hbf_antennas = 0;  // 0: same as the stream count
  std::uint64_t master_seed = 1;

  double wavelength() const { return kSpeedOfLight / carrier_frequency; }
  std::size_t stream_count() const { return 1 + num_groups + num_users; }
};

struct Scenario {
  ScenarioConfig config;
  SimGeometry geometry;
  Vec3 bs_position;
  std::vector<Vec3> user_positions;
  std::size_t num_users = 0;
  std::size_t num_groups = 0;
  double transmit_power = 0.0;
  double noise_power = 0.0;
  double rician_factor = 0.0;
  double carrier_frequency = 0.0;
  std::uint64_t master_seed = 0;

  std::size_t stream_count() const { return 1 + num_groups + num_users; }
};

std::vector<Vec3> generate_clustered_users(std::uint64_t seed, double sector_half_angle_deg,
                                           std::span<const double> cluster_radii,
                                           double cluster_diameter,
                                           std::span<const std::size_t> users_per_cluster,
                                           double user_height);

// Even split of K users over the clusters, remainder to the first clusters.
std::vector<std::size_t> split_users(std::size_t num_users, std::size_t num_clusters);

SimGeometry build_geometry(const ScenarioConfig& config);

// Validates every field and reports violations with field names.
void validate(const ScenarioConfig& config);

Scenario make_scenario(const ScenarioConfig& config);

// Same drop and SIM, different stream structure (N groups, N_t = 1+N+K feed antennas).
Scenario with_num_groups(const Scenario& scenario, std::size_t num_groups);

}  // namespace simrs
