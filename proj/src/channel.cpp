#include "simrs/channel.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace simrs {

PhaseConfig PhaseConfig::zeros(std::size_t layers, std::size_t elements) {
  return {RMatrix::Zero(static_cast<Eigen::Index>(layers), static_cast<Eigen::Index>(elements))};
}

RVector PhaseConfig::stacked() const {
  RVector x(angles.size());
  Eigen::Index i = 0;
  for (Eigen::Index l = 0; l < angles.rows(); ++l)
    for (Eigen::Index u = 0; u < angles.cols(); ++u) x(i++) = angles(l, u);
  return x;
}

PhaseConfig PhaseConfig::from_stacked(const RVector& x, std::size_t layers, std::size_t elements) {
  if (static_cast<std::size_t>(x.size()) != layers * elements)
    throw std::invalid_argument("PhaseConfig: stacked length != L*U");
  PhaseConfig p = zeros(layers, elements);
  Eigen::Index i = 0;
  for (Eigen::Index l = 0; l < p.angles.rows(); ++l)
    for (Eigen::Index u = 0; u < p.angles.cols(); ++u) p.angles(l, u) = x(i++);
  return p;
}

cplx rs_coefficient(const Vec3& src, const Vec3& dst, const Vec3& layer_normal, double element_area,
                    double wavelength) {
  if (!(element_area > 0.0) || !(wavelength > 0.0))
    throw std::invalid_argument("rs_coefficient: element area and wavelength must be positive");
  const Vec3 delta = dst - src;
  const double t = delta.norm();
  if (!(t > 0.0)) throw std::invalid_argument("rs_coefficient: coincident points");
  const double cos_eta = std::abs(delta.dot(layer_normal)) / t;
  const cplx spreading{1.0 / (kTwoPi * t), -1.0 / wavelength};
  return (element_area * cos_eta / t) * spreading * std::polar(1.0, kTwoPi * t / wavelength);
}

CMatrix inter_layer_matrix(const UpaLayout& prev, const UpaLayout& next, double element_area,
                           double wavelength, kernels::Exec exec) {
  if (std::abs(next.center().y - prev.center().y) <= 0.0)
    throw std::invalid_argument("inter_layer_matrix: layers are not separated");
  const Vec3 normal = next.normal();
  return kernels::fill(
      next.size(), prev.size(),
      [&](std::size_t u, std::size_t v) {
        return rs_coefficient(prev.position(v), next.position(u), normal, element_area, wavelength);
      },
      exec);
}

CMatrix feed_matrix(const UpaLayout& bs_layout, const UpaLayout& first_layer,
                    std::size_t active_count, double element_area, double wavelength) {
  if (active_count == 0 || active_count > bs_layout.size())
    throw std::invalid_argument("feed_matrix: active antenna count exceeds the BS array");
  const Vec3 normal = first_layer.normal();
  return kernels::fill(
      first_layer.size(), active_count,
      [&](std::size_t u, std::size_t i) {
        return rs_coefficient(bs_layout.position(i), first_layer.position(u), normal, element_area,
                              wavelength);
      },
      kernels::Exec::serial);
}

Vec3 direction(double elevation, double azimuth) {
  const double ce = std::cos(elevation);
  return {ce * std::sin(azimuth), ce * std::cos(azimuth), std::sin(elevation)};
}

CVector steering_vector(double elevation, double azimuth, const UpaLayout& layout,
                        double wavelength) {
  const Vec3 k = direction(elevation, azimuth);
  const double wavenumber = kTwoPi / wavelength;
  CVector a(static_cast<Eigen::Index>(layout.size()));
  for (std::size_t u = 0; u < layout.size(); ++u)
    a(static_cast<Eigen::Index>(u)) = std::polar(1.0, wavenumber * layout.offset(u).dot(k));
  return a;
}

double path_loss(double distance, double wavelength, double exponent) {
  if (!(distance > 0.0)) throw std::invalid_argument("path_loss: distance must be positive");
  return wavelength / (4.0 * kPi) * std::pow(distance, -0.5 * exponent);
}

LinkGeometry link_geometry(const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  const double dist = d.norm();
  if (!(dist > 0.0)) throw std::invalid_argument("link_geometry: coincident points");
  const double horizontal = std::hypot(d.x, d.y);
  return {dist, std::atan2(d.z, horizontal), std::atan2(d.x, d.y)};
}

CMatrix draw_rician_channel(std::span<const Vec3> users, const UpaLayout& layout, double wavelength,
                            double rician_factor, double path_loss_exponent, Rng& rng,
                            std::vector<double>* path_losses, std::vector<double>* elevations,
                            std::vector<double>* azimuths) {
  const auto k_users = static_cast<Eigen::Index>(users.size());
  const auto n = static_cast<Eigen::Index>(layout.size());
  const bool pure_los = std::isinf(rician_factor);
  const double los = pure_los ? 1.0 : std::sqrt(rician_factor / (rician_factor + 1.0));
  const double nlos = pure_los ? 0.0 : std::sqrt(1.0 / (rician_factor + 1.0));
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

  CMatrix q(k_users, n);
  for (Eigen::Index k = 0; k < k_users; ++k) {
    const auto link = link_geometry(layout.center(), users[static_cast<std::size_t>(k)]);
    const double lambda_k = path_loss(link.distance, wavelength, path_loss_exponent);
    const CVector a = steering_vector(link.elevation, link.azimuth, layout, wavelength);
    for (Eigen::Index u = 0; u < n; ++u) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      q(k, u) = lambda_k * (los * a(u) + nlos * cplx{re, im});
    }
    if (path_losses) path_losses->push_back(lambda_k);
    if (elevations) elevations->push_back(link.elevation);
    if (azimuths) azimuths->push_back(link.azimuth);
  }
  return q;
}

CMatrix draw_sim_ue_channel(const Scenario& scenario, const SimGeometry& geometry, Rng& rng,
                            ChannelSet* out) {
  return draw_rician_channel(scenario.user_positions, geometry.last_layer(), geometry.wavelength,
                             scenario.rician_factor, scenario.config.path_loss_exponent, rng,
                             out ? &out->path_losses : nullptr, out ? &out->elevations : nullptr,
                             out ? &out->azimuths : nullptr);
}

DirectChannel draw_direct_channel(const Scenario& scenario, std::size_t antenna_count,
                                  std::uint64_t seed) {
  if (antenna_count == 0) throw std::invalid_argument("draw_direct_channel: no antennas");
  const double lambda = scenario.geometry.wavelength;
  const auto side =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(antenna_count))));
  DirectChannel d;
  d.layout = build_upa_layout(side, side, scenario.config.element_spacing_lambda * lambda,
                              scenario.bs_position);
  Rng rng = make_rng(seed, Stream::direct_channel, side);
  d.gains = draw_rician_channel(scenario.user_positions, d.layout, lambda, scenario.rician_factor,
                                scenario.config.path_loss_exponent, rng, &d.path_losses);
  return d;
}

ChannelSet synthesize_channels(const Scenario& scenario, std::uint64_t seed) {
  const SimGeometry& g = scenario.geometry;
  ChannelSet c;
  c.seed = seed;
  c.feed = feed_matrix(g.feed_layout, g.layer_layouts.front(), g.active_antennas, g.element_area,
                       g.wavelength);
  for (std::size_t l = 1; l < g.num_layers; ++l)
    c.inter_layer.push_back(
        inter_layer_matrix(g.layer_layouts[l - 1], g.layer_layouts[l], g.element_area, g.wavelength));
  Rng rng = make_rng(seed, Stream::sim_channel);
  c.sim_ue = draw_sim_ue_channel(scenario, g, rng, &c);
  c.direct = draw_direct_channel(scenario, g.active_antennas, seed);
  return c;
}

CMatrix effective_channel(const CMatrix& sim_ue, const PhaseConfig& phases,
                          std::span<const CMatrix> inter_layer, kernels::Exec exec) {
  return kernels::cascade(sim_ue, phases.angles, inter_layer, exec);
}

CMatrix compose_end_to_end(const CMatrix& sim_out, const CMatrix& feed) {
  if (sim_out.cols() != feed.rows())
    throw std::invalid_argument("compose_end_to_end: inner dimensions differ");
  return sim_out * feed;
}

EffectiveChannel effective_channels(const ChannelSet& channels, const PhaseConfig& phases,
                                    kernels::Exec exec) {
  EffectiveChannel e;
  e.sim_out = effective_channel(channels.sim_ue, phases, channels.inter_layer, exec);
  e.end_to_end = compose_end_to_end(e.sim_out, channels.feed);
  return e;
}

namespace {

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

void fnv_matrix(std::uint64_t& h, const CMatrix& m) {
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(m.rows()),
                                 static_cast<std::uint64_t>(m.cols())};
  fnv_bytes(h, dims, sizeof dims);
  fnv_bytes(h, m.data(), sizeof(cplx) * static_cast<std::size_t>(m.size()));
}

}  // namespace

std::uint64_t channel_checksum(const ChannelSet& channels) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv_matrix(h, channels.sim_ue);
  fnv_matrix(h, channels.direct.gains);
  return h;
}

}  // namespace simrs
