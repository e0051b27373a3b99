#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "simrs/kernels.hpp"
#include "simrs/rng.hpp"
#include "simrs/scenario.hpp"
#include "simrs/types.hpp"

namespace simrs {

// Stacked SIM phase shifts, one row per layer (row 0 is the layer nearest the feed).
struct PhaseConfig {
  RMatrix angles;  // L x U, entries in [0, 2pi)

  std::size_t num_layers() const { return static_cast<std::size_t>(angles.rows()); }
  std::size_t elements() const { return static_cast<std::size_t>(angles.cols()); }

  static PhaseConfig zeros(std::size_t layers, std::size_t elements);
  // Layer-major stacking [theta_1; ...; theta_L].
  RVector stacked() const;
  static PhaseConfig from_stacked(const RVector& x, std::size_t layers, std::size_t elements);
};

// BS-to-user channel used by the schemes without a SIM.
struct DirectChannel {
  UpaLayout layout;
  CMatrix gains;  // K x N_BS
  std::vector<double> path_losses;
};

struct ChannelSet {
  CMatrix feed;                      // V: U x N_t
  std::vector<CMatrix> inter_layer;  // W_2..W_L, each U x U
  CMatrix sim_ue;                    // Q: K x U
  std::vector<double> path_losses;   // Lambda_k (amplitude)
  std::vector<double> elevations;    // xi_k
  std::vector<double> azimuths;      // zeta_k
  DirectChannel direct;              // BS array of the scenario's feed size
  std::uint64_t seed = 0;            // trial seed the random parts were drawn from
};

struct EffectiveChannel {
  CMatrix sim_out;     // H: K x U
  CMatrix end_to_end;  // H_eff: K x N_t
};

// Rayleigh-Sommerfeld coefficient from src to dst for a layer with the given normal.
cplx rs_coefficient(const Vec3& src, const Vec3& dst, const Vec3& layer_normal, double element_area,
                    double wavelength);

// Entry (u, v) propagates element v of `prev` to element u of `next`, so that
// W * (field on prev) gives the field arriving at `next`.
CMatrix inter_layer_matrix(const UpaLayout& prev, const UpaLayout& next, double element_area,
                           double wavelength, kernels::Exec exec = kernels::Exec::automatic);

// Column i: first active feed antenna i to every first-layer meta-atom.
CMatrix feed_matrix(const UpaLayout& bs_layout, const UpaLayout& first_layer,
                    std::size_t active_count, double element_area, double wavelength);

// Unit direction for elevation xi (from the x-y plane) and azimuth zeta (from +y toward +x).
Vec3 direction(double elevation, double azimuth);
CVector steering_vector(double elevation, double azimuth, const UpaLayout& layout,
                        double wavelength);

// Amplitude gain lambda/(4 pi) * d^(-exponent/2); exponent 2 is free space.
double path_loss(double distance, double wavelength, double exponent = 2.0);

struct LinkGeometry {
  double distance;
  double elevation;
  double azimuth;
};
LinkGeometry link_geometry(const Vec3& from, const Vec3& to);

// Rician rows Lambda_k (sqrt(K/(K+1)) a(xi_k, zeta_k) + sqrt(1/(K+1)) n_k), n_k ~ CN(0, I).
// Angles and distances are measured from `layout`'s center.
CMatrix draw_rician_channel(std::span<const Vec3> users, const UpaLayout& layout, double wavelength,
                            double rician_factor, double path_loss_exponent, Rng& rng,
                            std::vector<double>* path_losses = nullptr,
                            std::vector<double>* elevations = nullptr,
                            std::vector<double>* azimuths = nullptr);

CMatrix draw_sim_ue_channel(const Scenario& scenario, const SimGeometry& geometry, Rng& rng,
                            ChannelSet* out = nullptr);

// Direct channel to a ceil(sqrt(n))^2 UPA centered at the BS. Deterministic in (seed, n).
DirectChannel draw_direct_channel(const Scenario& scenario, std::size_t antenna_count,
                                  std::uint64_t seed);

// All channels of one trial; random parts come from independent sub-streams of `seed`.
ChannelSet synthesize_channels(const Scenario& scenario, std::uint64_t seed);

// H = Q Psi_L W_L ... W_2 Psi_1.
CMatrix effective_channel(const CMatrix& sim_ue, const PhaseConfig& phases,
                          std::span<const CMatrix> inter_layer,
                          kernels::Exec exec = kernels::Exec::automatic);

CMatrix compose_end_to_end(const CMatrix& sim_out, const CMatrix& feed);

EffectiveChannel effective_channels(const ChannelSet& channels, const PhaseConfig& phases,
                                    kernels::Exec exec = kernels::Exec::automatic);

// FNV-1a over the random parts of a trial (positions excluded): Q and the direct channel.
std::uint64_t channel_checksum(const ChannelSet& channels);

}  // namespace simrs
