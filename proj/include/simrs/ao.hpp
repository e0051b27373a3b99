#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "simrs/channel.hpp"
#include "simrs/grouping.hpp"
#include "simrs/rsma.hpp"
#include "simrs/scenario.hpp"
#include "simrs/spsa.hpp"

// Alternating optimization of phases, stream powers and user grouping for the
// max-min rate objective.
namespace simrs::ao {

struct SolveOptions {
  std::size_t max_iterations = 3000;
  double conv_eps = 1e-4;           // bits/s/Hz
  std::size_t stagnation_window = 500;
  std::size_t grouping_period = 1;
  std::size_t refine_rounds = 4;    // I_ref
  // Phase gains act on radians. Power gains act on powers normalized by P_t.
  // A < 0 selects 10% of max_iterations.
  spsa::Gains phase_gains{1.0, -1.0, 0.602, 0.1, 0.101};
  spsa::Gains power_gains{0.1, -1.0, 0.602, 0.01, 0.101};
  grouping::KMeansOptions kmeans{};
  grouping::FeatureMode features = grouping::FeatureMode::reim;
  std::uint64_t seed = 1;
  bool record_spsa = false;

  void validate() const;
};

// Generic problem seen by the optimizer: a phase vector (possibly empty)
// drives the end-to-end stream channel; powers and grouping enter the rate model.
struct Model {
  std::size_t phase_dim = 0;
  std::size_t num_users = 0;
  std::size_t num_groups = 0;
  double total_power = 0.0;
  double noise_power = 0.0;
  // K x (1+N+K) stream channel for the given phases and grouping.
  std::function<CMatrix(const RVector& phases, const Grouping& grouping)> end_to_end;
  // Channel whose rows feed the k-means features.
  std::function<CMatrix(const RVector& phases)> feature_channel;
};

struct Incumbent {
  RVector phases;
  PowerAllocation power;
  Grouping grouping;
  double min_rate = -1.0;
};

struct SolveState {
  std::size_t iterations = 0;
  RVector phases;
  PowerAllocation power;
  Grouping grouping;
  Incumbent best;
  double initial_min_rate = 0.0;
  std::vector<double> trace_raw;        // R_min at the end of each iteration
  std::vector<double> trace_incumbent;  // best-so-far R_min after each iteration
  std::vector<std::size_t> trace_evaluations;  // cumulative objective evaluations
  std::vector<spsa::Diagnostics> phase_diagnostics;
  std::vector<spsa::Diagnostics> power_diagnostics;
  bool converged = false;
};

RateReport evaluate(const Model& model, const RVector& phases, const PowerAllocation& power,
                    const Grouping& grouping);

SolveState initialize(const Model& model, const SolveOptions& options, Rng& rng);
SolveState solve(const Model& model, const SolveOptions& options);

// SIM-aided model: phases are the stacked L x U angles.
Model sim_model(const Scenario& scenario, const ChannelSet& channels);

RateReport evaluate(const PhaseConfig& phases, const PowerAllocation& power,
                    const Grouping& grouping, const ChannelSet& channels, const Scenario& scenario);

SolveState initialize(const Scenario& scenario, const ChannelSet& channels,
                      const SolveOptions& options);
SolveState solve(const Scenario& scenario, const ChannelSet& channels, const SolveOptions& options);

// Writes t,r_min_raw,r_min_incumbent,evaluations.
void write_trace(std::ostream& os, const SolveState& state);

}  // namespace simrs::ao
