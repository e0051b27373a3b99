#include "simrs/baselines.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace simrs {

std::string_view scheme_name(SchemeId id) {
  switch (id) {
    case SchemeId::SimHrsma: return "sim_hrsma";
    case SchemeId::SimRsma: return "sim_rsma";
    case SchemeId::NpHrsma: return "np_hrsma";
    case SchemeId::NpRsma: return "np_rsma";
    case SchemeId::HbfHrsma: return "hbf_hrsma";
    case SchemeId::HbfRsma: return "hbf_rsma";
  }
  return "unknown";
}

std::optional<SchemeId> parse_scheme(std::string_view name) {
  for (SchemeId id : kAllSchemes)
    if (scheme_name(id) == name) return id;
  return std::nullopt;
}

bool is_hierarchical(SchemeId id) {
  return id == SchemeId::SimHrsma || id == SchemeId::NpHrsma || id == SchemeId::HbfHrsma;
}

namespace baselines {

CMatrix rzf_precoder(const CMatrix& channel, double regularization) {
  const Eigen::Index k = channel.rows();
  const CMatrix gram = channel * channel.adjoint() + regularization * CMatrix::Identity(k, k);
  return channel.adjoint() * gram.ldlt().solve(CMatrix::Identity(k, k));
}

RMatrix dft_angles(std::size_t n) {
  RMatrix a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      a(r, c) = spsa::wrap_angle(-kTwoPi * static_cast<double>(r * c) / static_cast<double>(n));
  return a;
}

CMatrix hbf_precoder(const CMatrix& direct, const RMatrix& analog_angles, const Grouping& grouping,
                     std::size_t num_groups, double regularization) {
  const Eigen::Index k_users = direct.rows();
  if (analog_angles.rows() != direct.cols())
    throw std::invalid_argument("hbf_precoder: analog rows must match the antenna count");
  const CMatrix analog = analog_angles.unaryExpr([](double a) { return std::polar(1.0, a); });
  const CMatrix rzf = rzf_precoder(direct * analog, regularization);  // N_RF x K

  const auto streams = static_cast<Eigen::Index>(1 + num_groups) + k_users;
  CMatrix digital = CMatrix::Zero(analog.cols(), streams);
  digital.col(0) = rzf.rowwise().sum();
  for (Eigen::Index k = 0; k < k_users; ++k) {
    if (num_groups > 0)
      digital.col(static_cast<Eigen::Index>(1 + grouping.assignment[static_cast<std::size_t>(k)])) +=
          rzf.col(k);
    digital.col(static_cast<Eigen::Index>(1 + num_groups) + k) = rzf.col(k);
  }
  CMatrix composite = analog * digital;
  for (Eigen::Index i = 0; i < composite.cols(); ++i) {
    const double n = composite.col(i).norm();
    if (n > 0.0) composite.col(i) /= n;
  }
  return composite;
}

std::pair<Scenario, ChannelSet> restructure(const Scenario& scenario, const ChannelSet& channels,
                                            std::size_t num_groups) {
  Scenario s = with_num_groups(scenario, num_groups);
  ChannelSet c = channels;
  const SimGeometry& g = s.geometry;
  c.feed = feed_matrix(g.feed_layout, g.layer_layouts.front(), g.active_antennas, g.element_area,
                       g.wavelength);
  return {std::move(s), std::move(c)};
}

ao::SolveState solve_sim_hrsma(const Scenario& scenario, const ChannelSet& channels,
                               const ao::SolveOptions& options) {
  return ao::solve(scenario, channels, options);
}

ao::SolveState solve_sim_rsma(const Scenario& scenario, const ChannelSet& channels,
                              const ao::SolveOptions& options) {
  const auto [s, c] = restructure(scenario, channels, 0);
  return ao::solve(s, c, options);
}

namespace {

// Direct BS channel restricted to the first `count` antennas of a ceil(sqrt(count))^2 array.
CMatrix active_direct(const Scenario& scenario, const ChannelSet& channels, std::size_t count) {
  const auto& d = channels.direct;
  const auto side = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(count))));
  if (d.layout.rows() == side && d.gains.cols() >= static_cast<Eigen::Index>(count))
    return d.gains.leftCols(static_cast<Eigen::Index>(count));
  return draw_direct_channel(scenario, count, channels.seed)
      .gains.leftCols(static_cast<Eigen::Index>(count));
}

}  // namespace

ao::Model non_precoding_model(const Scenario& scenario, const ChannelSet& channels,
                              bool hierarchical) {
  const std::size_t groups = hierarchical ? scenario.num_groups : 0;
  const std::size_t streams = 1 + groups + scenario.num_users;
  auto h = std::make_shared<const CMatrix>(active_direct(scenario, channels, streams));
  ao::Model m;
  m.phase_dim = 0;
  m.num_users = scenario.num_users;
  m.num_groups = groups;
  m.total_power = scenario.transmit_power;
  m.noise_power = scenario.noise_power;
  m.feature_channel = [h](const RVector&) { return *h; };
  m.end_to_end = [h](const RVector&, const Grouping&) { return *h; };
  return m;
}

ao::SolveState solve_non_precoding(const Scenario& scenario, const ChannelSet& channels,
                                   bool hierarchical, const ao::SolveOptions& options) {
  return ao::solve(non_precoding_model(scenario, channels, hierarchical), options);
}

ao::Model hbf_model(const Scenario& scenario, const ChannelSet& channels, bool hierarchical,
                    const HbfConfig& hbf) {
  const std::size_t groups = hierarchical ? scenario.num_groups : 0;
  const std::size_t rf = 1 + groups + scenario.num_users;
  const std::size_t n_ant = hbf.antenna_count == 0 ? rf : hbf.antenna_count;
  if (n_ant < rf) throw std::invalid_argument("hbf: antenna count below the RF chain count");
  if (hbf.fixed_dft_analog && n_ant != rf)
    throw std::invalid_argument("hbf: fixed DFT analog stage needs N_ant = N_RF");

  auto g = std::make_shared<const CMatrix>(active_direct(scenario, channels, n_ant));
  const double alpha =
      static_cast<double>(rf) * scenario.noise_power / scenario.transmit_power;
  const auto rows = static_cast<Eigen::Index>(n_ant);
  const auto cols = static_cast<Eigen::Index>(rf);
  auto fixed = std::make_shared<const RMatrix>(hbf.fixed_dft_analog ? dft_angles(rf) : RMatrix());

  auto analog = [rows, cols, fixed](const RVector& x) -> RMatrix {
    if (fixed->size() > 0) return *fixed;
    return Eigen::Map<const RMatrix>(x.data(), rows, cols);
  };

  ao::Model m;
  m.phase_dim = hbf.fixed_dft_analog ? 0 : n_ant * rf;
  m.num_users = scenario.num_users;
  m.num_groups = groups;
  m.total_power = scenario.transmit_power;
  m.noise_power = scenario.noise_power;
  m.feature_channel = [g, analog](const RVector& x) -> CMatrix {
    return *g * analog(x).unaryExpr([](double a) { return std::polar(1.0, a); });
  };
  m.end_to_end = [g, analog, groups, alpha](const RVector& x, const Grouping& grouping) -> CMatrix {
    return *g * hbf_precoder(*g, analog(x), grouping, groups, alpha);
  };
  return m;
}

ao::SolveState solve_hbf(const Scenario& scenario, const ChannelSet& channels, bool hierarchical,
                         const HbfConfig& hbf, const ao::SolveOptions& options) {
  return ao::solve(hbf_model(scenario, channels, hierarchical, hbf), options);
}

ao::Model scheme_model(SchemeId id, const Scenario& scenario, const ChannelSet& channels,
                       const HbfConfig& hbf) {
  switch (id) {
    case SchemeId::SimHrsma: return ao::sim_model(scenario, channels);
    case SchemeId::SimRsma: {
      // The model keeps the restructured scenario and channels alive.
      auto owned = std::make_shared<const std::pair<Scenario, ChannelSet>>(
          restructure(scenario, channels, 0));
      ao::Model m = ao::sim_model(owned->first, owned->second);
      m.feature_channel = [owned, f = m.feature_channel](const RVector& x) { return f(x); };
      m.end_to_end = [owned, f = m.end_to_end](const RVector& x, const Grouping& g) {
        return f(x, g);
      };
      return m;
    }
    case SchemeId::NpHrsma: return non_precoding_model(scenario, channels, true);
    case SchemeId::NpRsma: return non_precoding_model(scenario, channels, false);
    case SchemeId::HbfHrsma: return hbf_model(scenario, channels, true, hbf);
    case SchemeId::HbfRsma: return hbf_model(scenario, channels, false, hbf);
  }
  throw std::invalid_argument("scheme_model: unknown scheme");
}

ao::SolveState run_scheme(SchemeId id, const Scenario& scenario, const ChannelSet& channels,
                          const ao::SolveOptions& options, const HbfConfig& hbf) {
  return ao::solve(scheme_model(id, scenario, channels, hbf), options);
}

}  // namespace baselines
}  // namespace simrs
