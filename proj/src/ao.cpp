#include "simrs/ao.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace simrs::ao {

namespace {

constexpr double kPowerEps = 1e-12;

spsa::Gains resolve(spsa::Gains g, std::size_t max_iterations) {
  if (g.A < 0.0) g.A = 0.1 * static_cast<double>(max_iterations);
  g.validate();
  return g;
}

Grouping trivial_grouping(std::size_t num_groups, std::size_t num_users) {
  if (num_groups == 0) return {0, {}};
  return {num_groups, std::vector<std::size_t>(num_users, 0)};
}

// Tracks evaluations and the best-so-far feasible point.
struct Tracker {
  const Model& model;
  SolveState& state;
  std::size_t evaluations = 0;

  RateReport rates(const RVector& phases, const PowerAllocation& p, const Grouping& g) {
    ++evaluations;
    return evaluate(model, phases, p, g);
  }

  double consider(double min_rate) {
    if (min_rate > state.best.min_rate) {
      state.best = {state.phases, state.power, state.grouping, min_rate};
    }
    return min_rate;
  }
};

}  // namespace

void SolveOptions::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations: must be >= 1");
  if (!(conv_eps >= 0.0)) throw std::invalid_argument("conv_eps: must be >= 0");
  if (grouping_period < 1) throw std::invalid_argument("grouping_period: must be >= 1");
  if (refine_rounds < 1) throw std::invalid_argument("refine_rounds: must be >= 1");
  if (stagnation_window < 1) throw std::invalid_argument("stagnation_window: must be >= 1");
  resolve(phase_gains, max_iterations);
  resolve(power_gains, max_iterations);
}

RateReport evaluate(const Model& model, const RVector& phases, const PowerAllocation& power,
                    const Grouping& grouping) {
  return evaluate_rates(model.end_to_end(phases, grouping), power, grouping, model.noise_power);
}

SolveState initialize(const Model& model, const SolveOptions& options, Rng& rng) {
  SolveState s;
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  s.phases.resize(static_cast<Eigen::Index>(model.phase_dim));
  for (Eigen::Index i = 0; i < s.phases.size(); ++i) s.phases(i) = angle(rng);

  const std::size_t streams = 1 + model.num_groups + model.num_users;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RVector raw(static_cast<Eigen::Index>(streams));
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw(i) = unit(rng);
  s.power = PowerAllocation(spsa::project_power(raw, model.total_power, kPowerEps * model.total_power),
                            model.num_groups, model.num_users);

  if (model.num_groups >= 2) {
    const auto features = grouping::user_features(model.feature_channel(s.phases), options.features);
    s.grouping = grouping::kmeans_partition(features, model.num_groups, options.kmeans, rng);
  } else {
    s.grouping = trivial_grouping(model.num_groups, model.num_users);
  }
  s.initial_min_rate = evaluate(model, s.phases, s.power, s.grouping).min_rate;
  s.best = {s.phases, s.power, s.grouping, s.initial_min_rate};
  return s;
}

SolveState solve(const Model& model, const SolveOptions& options) {
  options.validate();
  const spsa::Gains phase_gains = resolve(options.phase_gains, options.max_iterations);
  const spsa::Gains power_gains = resolve(options.power_gains, options.max_iterations);
  Rng rng = make_rng(options.seed, Stream::solver);

  SolveState state = initialize(model, options, rng);
  Tracker track{model, state, 1};
  const double pt = model.total_power;

  const spsa::Projection wrap = spsa::wrap_phase;
  const spsa::Projection simplex = [](const RVector& z) {
    return spsa::project_power(z, 1.0, kPowerEps);
  };

  for (std::size_t t = 1; t <= options.max_iterations; ++t) {
    const std::size_t k = t - 1;
    double current = 0.0;
    try {
      if (model.phase_dim > 0) {
        const spsa::Objective f_phase = [&](const RVector& x) {
          return track.rates(x, state.power, state.grouping).min_rate;
        };
        auto st = spsa::step(f_phase, state.phases, k, phase_gains, wrap, rng);
        state.phases = std::move(st.x);
        if (options.record_spsa) state.phase_diagnostics.push_back(st.diagnostics);
        current = track.consider(track.rates(state.phases, state.power, state.grouping).min_rate);
      }

      const spsa::Objective f_power = [&](const RVector& x) {
        return track.rates(state.phases, PowerAllocation(pt * x, model.num_groups, model.num_users),
                           state.grouping)
            .min_rate;
      };
      auto sp = spsa::step(f_power, state.power.p / pt, k, power_gains, simplex, rng);
      state.power = PowerAllocation(pt * sp.x, model.num_groups, model.num_users);
      if (options.record_spsa) state.power_diagnostics.push_back(sp.diagnostics);
      current = track.consider(track.rates(state.phases, state.power, state.grouping).min_rate);

      if (model.num_groups >= 2 && t % options.grouping_period == 0) {
        const grouping::RateEval eval = [&](const Grouping& g) {
          return track.rates(state.phases, state.power, g).user_rates;
        };
        auto refined = grouping::greedy_refine(eval, state.grouping, options.refine_rounds);
        state.grouping = std::move(refined.grouping);
        current = track.consider(refined.min_rate);
      }
    } catch (const std::exception& e) {
      throw std::runtime_error("ao iteration " + std::to_string(t) + ": " + e.what());
    }

    state.iterations = t;
    state.trace_raw.push_back(current);
    state.trace_incumbent.push_back(state.best.min_rate);
    state.trace_evaluations.push_back(track.evaluations);

    const std::size_t w = options.stagnation_window;
    if (t > w) {
      const double gain = state.trace_incumbent[t - 1] - state.trace_incumbent[t - 1 - w];
      if (gain <= options.conv_eps) {
        state.converged = true;
        break;
      }
    }
  }
  return state;
}

Model sim_model(const Scenario& scenario, const ChannelSet& channels) {
  const std::size_t layers = scenario.geometry.num_layers;
  const std::size_t elements = scenario.geometry.elements_per_layer;
  if (static_cast<std::size_t>(channels.feed.cols()) != scenario.stream_count())
    throw std::invalid_argument("sim_model: feed matrix does not match 1 + N + K streams");
  Model m;
  m.phase_dim = layers * elements;
  m.num_users = scenario.num_users;
  m.num_groups = scenario.num_groups;
  m.total_power = scenario.transmit_power;
  m.noise_power = scenario.noise_power;
  // Channels are captured by reference; the model must not outlive them.
  m.feature_channel = [&channels, layers, elements](const RVector& x) {
    return effective_channels(channels, PhaseConfig::from_stacked(x, layers, elements),
                              kernels::Exec::serial)
        .end_to_end;
  };
  m.end_to_end = [f = m.feature_channel](const RVector& x, const Grouping&) { return f(x); };
  return m;
}

RateReport evaluate(const PhaseConfig& phases, const PowerAllocation& power,
                    const Grouping& grouping, const ChannelSet& channels, const Scenario& scenario) {
  const CMatrix h_eff = effective_channels(channels, phases, kernels::Exec::serial).end_to_end;
  if (static_cast<std::size_t>(h_eff.cols()) != power.size())
    throw std::invalid_argument("evaluate: stream count mismatch");
  return evaluate_rates(h_eff, power, grouping, scenario.noise_power);
}

SolveState initialize(const Scenario& scenario, const ChannelSet& channels,
                      const SolveOptions& options) {
  const Model m = sim_model(scenario, channels);
  Rng rng = make_rng(options.seed, Stream::solver);
  return initialize(m, options, rng);
}

SolveState solve(const Scenario& scenario, const ChannelSet& channels, const SolveOptions& options) {
  return solve(sim_model(scenario, channels), options);
}

void write_trace(std::ostream& os, const SolveState& state) {
  os << "t,r_min_raw,r_min_incumbent,evaluations\n";
  os.precision(17);
  for (std::size_t i = 0; i < state.trace_raw.size(); ++i)
    os << (i + 1) << ',' << state.trace_raw[i] << ',' << state.trace_incumbent[i] << ','
       << state.trace_evaluations[i] << '\n';
}

}  // namespace simrs::ao
