#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "simrs/ao.hpp"

namespace simrs {

enum class SchemeId { SimHrsma, SimRsma, NpHrsma, NpRsma, HbfHrsma, HbfRsma };

inline constexpr std::array<SchemeId, 6> kAllSchemes{SchemeId::SimHrsma, SchemeId::SimRsma,
                                                     SchemeId::NpHrsma,  SchemeId::NpRsma,
                                                     SchemeId::HbfHrsma, SchemeId::HbfRsma};

std::string_view scheme_name(SchemeId id);
std::optional<SchemeId> parse_scheme(std::string_view name);
bool is_hierarchical(SchemeId id);

namespace baselines {

struct HbfConfig {
  std::size_t antenna_count = 0;  // N_ant; 0 selects N_RF
  // Freeze the analog stage to a DFT matrix (requires N_ant = N_RF): pure digital RZF.
  bool fixed_dft_analog = false;
};

// F = H^H (H H^H + alpha I)^-1 for a K x M channel; M x K.
CMatrix rzf_precoder(const CMatrix& channel, double regularization);

// Composite precoder F_RF F_BB (N_ant x (1+N+K)) with unit-norm columns.
// Private stream k uses RZF column k; group n the sum of its members' columns;
// the common stream the sum of all columns.
CMatrix hbf_precoder(const CMatrix& direct, const RMatrix& analog_angles, const Grouping& grouping,
                     std::size_t num_groups, double regularization);

RMatrix dft_angles(std::size_t n);

// Scenario and channels with the feed rebuilt for N groups.
std::pair<Scenario, ChannelSet> restructure(const Scenario& scenario, const ChannelSet& channels,
                                            std::size_t num_groups);

ao::SolveState solve_sim_hrsma(const Scenario& scenario, const ChannelSet& channels,
                               const ao::SolveOptions& options);
ao::SolveState solve_sim_rsma(const Scenario& scenario, const ChannelSet& channels,
                              const ao::SolveOptions& options);

ao::Model non_precoding_model(const Scenario& scenario, const ChannelSet& channels,
                              bool hierarchical);
ao::SolveState solve_non_precoding(const Scenario& scenario, const ChannelSet& channels,
                                   bool hierarchical, const ao::SolveOptions& options);

ao::Model hbf_model(const Scenario& scenario, const ChannelSet& channels, bool hierarchical,
                    const HbfConfig& hbf);
ao::SolveState solve_hbf(const Scenario& scenario, const ChannelSet& channels, bool hierarchical,
                         const HbfConfig& hbf, const ao::SolveOptions& options);

// Optimization model of a scheme. SIM models reference `channels`, which must outlive them.
ao::Model scheme_model(SchemeId id, const Scenario& scenario, const ChannelSet& channels,
                       const HbfConfig& hbf = {});

ao::SolveState run_scheme(SchemeId id, const Scenario& scenario, const ChannelSet& channels,
                          const ao::SolveOptions& options, const HbfConfig& hbf = {});

}  // namespace baselines
}  // namespace simrs
