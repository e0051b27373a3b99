#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simrs/ao.hpp"
#include "simrs/baselines.hpp"
#include "simrs/scenario.hpp"

namespace simrs::harness {

enum class SweepParam { layers, elements, antennas, power, users, spacing };

std::string_view param_name(SweepParam p);
std::optional<SweepParam> parse_param(std::string_view name);

// Units of sweep values: layers, elements, antennas and users are counts;
// power is in dBm; spacing is in wavelengths.
void apply_sweep_value(SweepParam param, double value, ScenarioConfig& scenario,
                       baselines::HbfConfig& hbf);

struct SweepSpec {
  SweepParam param = SweepParam::layers;
  std::vector<double> values;
  std::vector<SchemeId> schemes;
  std::size_t trials = 1;
  ScenarioConfig base_config;
  ao::SolveOptions solver;
  std::uint64_t master_seed = 1;
  std::size_t workers = 1;
  std::string trace_dir;  // empty: no convergence traces
  // Reuse the value-0 seed for every value so each trial sees the same drop
  // and fading at every sweep point.
  bool paired_values = false;

  void validate() const;
};

struct TrialResult {
  SweepParam param = SweepParam::layers;
  double value = 0.0;
  SchemeId scheme = SchemeId::SimHrsma;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double min_rate = 0.0;  // NaN when the trial failed
  std::vector<double> user_rates;
  std::size_t iterations = 0;
  double wall_ms = 0.0;
  std::uint64_t channel_checksum = 0;
  std::string error;  // not persisted
};

// mix_seed({master, value_index, trial_index})
std::uint64_t trial_seed(std::uint64_t master, std::size_t value_index, std::size_t trial_index);

// Ordered by (value index, trial, scheme order in the spec).
std::vector<TrialResult> run_sweep(const SweepSpec& spec);

struct SummaryRow {
  SweepParam param = SweepParam::layers;
  double value = 0.0;
  SchemeId scheme = SchemeId::SimHrsma;
  std::size_t count = 0;
  double mean = 0.0;
  double stderr_ = 0.0;  // sample std / sqrt(count); 0 for a single row
};

// Failed (NaN) rows are dropped; groups left empty are skipped with a warning
// on `warnings` when given.
std::vector<SummaryRow> summarize(const std::vector<TrialResult>& results,
                                  std::ostream* warnings = nullptr);

std::string results_header();
std::string format_result(const TrialResult& r);
TrialResult parse_result(const std::string& line);
void write_results(std::ostream& os, const std::vector<TrialResult>& results);
std::vector<TrialResult> read_results(std::istream& is);

std::string summary_header();
void write_summary(std::ostream& os, const std::vector<SummaryRow>& rows);

}  // namespace simrs::harness
