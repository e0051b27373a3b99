#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "simrs/channel.hpp"
#include "simrs/config.hpp"
#include "simrs/harness.hpp"
#include "simrs/io.hpp"

namespace {

using namespace simrs;

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

// Sweep defaults used when --values is absent.
std::vector<double> default_values(harness::SweepParam p) {
  switch (p) {
    case harness::SweepParam::layers: return {2, 3, 4, 5, 6, 7};
    case harness::SweepParam::elements: return {16, 36, 64, 100};
    case harness::SweepParam::antennas: return {9, 16, 36, 64};
    case harness::SweepParam::power: return {0, 10, 20, 30, 40};
    case harness::SweepParam::users: return {2, 4, 6, 8};
    case harness::SweepParam::spacing: return {1.0 / 24, 1.0 / 12, 5.0 / 24, 1.0 / 4, 1.0 / 2, 1.0};
  }
  return {};
}

struct Bases {
  ScenarioConfig scenario;
  ao::SolveOptions solver;
};

Bases load_bases(const std::string& config_path) {
  Bases b;
  b.scenario.elements_per_layer = 16;  // desk scale; a config file may override
  if (!config_path.empty()) apply_config(load_config_file(config_path), b.scenario, b.solver);
  return b;
}

// Writes to `path`, or stdout when the path is empty or "-".
template <class F>
void with_output(const std::string& path, F write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  write(out);
}

int cmd_run(const std::string& config, const std::string& sweep, const std::string& values,
            const std::string& schemes, std::size_t trials, std::uint64_t seed, const std::string& out,
            std::size_t workers, const std::string& trace_dir, bool paired) {
  harness::SweepSpec spec;
  const auto param = harness::parse_param(sweep);
  if (!param) throw std::invalid_argument("unknown sweep parameter '" + sweep + "'");
  spec.param = *param;
  if (values.empty()) {
    spec.values = default_values(spec.param);
  } else {
    for (const auto& v : split(values)) spec.values.push_back(parse_number(v));
  }
  for (const auto& name : split(schemes)) {
    const auto id = parse_scheme(name);
    if (!id) throw std::invalid_argument("unknown scheme '" + name + "'");
    spec.schemes.push_back(*id);
  }
  Bases b = load_bases(config);
  spec.base_config = b.scenario;
  spec.solver = b.solver;
  spec.trials = trials;
  spec.master_seed = seed;
  spec.workers = workers;
  spec.trace_dir = trace_dir;
  spec.paired_values = paired;

  const auto results = harness::run_sweep(spec);
  std::size_t failed = 0;
  for (const auto& r : results)
    if (!r.error.empty()) {
      ++failed;
      std::cerr << "trial failed: " << harness::param_name(r.param) << '='
                << io::format_double(r.value) << ' ' << scheme_name(r.scheme) << " trial " << r.trial
                << ": " << r.error << '\n';
    }
  with_output(out, [&](std::ostream& os) { harness::write_results(os, results); });
  if (failed) std::cerr << failed << " of " << results.size() << " trials failed\n";
  return failed == results.size() ? 1 : 0;
}

int cmd_summarize(const std::string& in_path, const std::string& out) {
  std::ifstream in(in_path);
  if (!in) throw std::runtime_error("cannot open results file " + in_path);
  const auto rows = harness::summarize(harness::read_results(in), &std::cerr);
  with_output(out, [&](std::ostream& os) { harness::write_summary(os, rows); });
  return 0;
}

int cmd_channels(const std::string& config, std::uint64_t seed, const std::string& out) {
  Bases b = load_bases(config);
  b.scenario.master_seed = seed;
  const Scenario scenario = make_scenario(b.scenario);
  const ChannelSet channels = synthesize_channels(scenario, seed);
  with_output(out, [&](std::ostream& os) { io::write_channel_dump(os, channels); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIM-aided hierarchical rate-splitting simulator"};
  app.require_subcommand(1);

  std::string config, sweep = "layers", values, schemes = "sim_hrsma", out, trace_dir;
  std::size_t trials = 50, workers = 1;
  std::uint64_t seed = 1;
  bool paired = false;

  auto* run = app.add_subcommand("run", "Run a parameter sweep and write per-trial results as CSV");
  run->add_option("--config", config, "key = value scenario/solver overrides")
      ->envname("SIMRS_CONFIG")
      ->check(CLI::ExistingFile);
  run->add_option("--sweep", sweep, "layers|elements|antennas|power|users|spacing")
      ->envname("SIMRS_SWEEP")
      ->capture_default_str();
  run->add_option("--values", values, "comma list; power in dBm, spacing in wavelengths (5/24 ok)")
      ->envname("SIMRS_VALUES");
  run->add_option("--schemes", schemes, "comma list of scheme names")
      ->envname("SIMRS_SCHEMES")
      ->capture_default_str();
  run->add_option("--trials", trials, "trials per sweep value")
      ->envname("SIMRS_TRIALS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--seed", seed, "master seed")->envname("SIMRS_SEED")->capture_default_str();
  run->add_option("--out", out, "results CSV (default stdout)")->envname("SIMRS_OUT");
  run->add_option("--workers", workers, "concurrent trials")
      ->envname("SIMRS_WORKERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--trace-dir", trace_dir, "directory for per-trial convergence traces")
      ->envname("SIMRS_TRACE_DIR");
  run->add_flag("--paired-values", paired, "reuse each trial's drop and fading at every sweep value")
      ->envname("SIMRS_PAIRED_VALUES");

  std::string in_path, summary_out;
  auto* summarize = app.add_subcommand("summarize", "Mean and standard error of R_min per value and scheme");
  summarize->add_option("--in", in_path, "results CSV")->required()->check(CLI::ExistingFile);
  summarize->add_option("--out", summary_out, "summary CSV (default stdout)");

  std::string dump_out;
  std::uint64_t dump_seed = 1;
  auto* channels = app.add_subcommand("channels", "Dump the synthesized channel matrices of one drop");
  channels->add_option("--config", config, "key = value overrides")->check(CLI::ExistingFile);
  channels->add_option("--seed", dump_seed, "trial seed")->capture_default_str();
  channels->add_option("--out", dump_out, "dump file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config, sweep, values, schemes, trials, seed, out, workers, trace_dir, paired);
    if (*summarize) return cmd_summarize(in_path, summary_out);
    if (*channels) return cmd_channels(config, dump_seed, dump_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
