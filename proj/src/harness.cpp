#include "simrs/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "simrs/channel.hpp"
#include "simrs/io.hpp"

namespace simrs::harness {

std::string_view param_name(SweepParam p) {
  switch (p) {
    case SweepParam::layers: return "layers";
    case SweepParam::elements: return "elements";
    case SweepParam::antennas: return "antennas";
    case SweepParam::power: return "power";
    case SweepParam::users: return "users";
    case SweepParam::spacing: return "spacing";
  }
  return "unknown";
}

std::optional<SweepParam> parse_param(std::string_view name) {
  for (auto p : {SweepParam::layers, SweepParam::elements, SweepParam::antennas, SweepParam::power,
                 SweepParam::users, SweepParam::spacing})
    if (param_name(p) == name) return p;
  return std::nullopt;
}

namespace {

std::size_t as_count(SweepParam p, double v) {
  if (!(v >= 0.0) || v != std::floor(v))
    throw std::invalid_argument(std::string(param_name(p)) + ": sweep value must be a whole number");
  return static_cast<std::size_t>(v);
}

}  // namespace

void apply_sweep_value(SweepParam param, double value, ScenarioConfig& s, baselines::HbfConfig& hbf) {
  switch (param) {
    case SweepParam::layers: s.num_layers = as_count(param, value); break;
    case SweepParam::elements: s.elements_per_layer = as_count(param, value); break;
    case SweepParam::antennas:
      s.hbf_antennas = as_count(param, value);
      hbf.antenna_count = s.hbf_antennas;
      break;
    case SweepParam::power: s.transmit_power = dbm_to_watt(value); break;
    case SweepParam::users:
      s.num_users = as_count(param, value);
      s.users_per_cluster.clear();
      break;
    case SweepParam::spacing: s.layer_spacing_lambda = value; break;
  }
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: values must be non-empty");
  if (schemes.empty()) throw std::invalid_argument("sweep: schemes must be non-empty");
  if (trials < 1) throw std::invalid_argument("sweep: trials must be at least 1");
  if (workers < 1) throw std::invalid_argument("sweep: workers must be at least 1");
  std::set<SchemeId> seen(schemes.begin(), schemes.end());
  if (seen.size() != schemes.size()) throw std::invalid_argument("sweep: duplicate scheme");
  solver.validate();
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t value_index, std::size_t trial_index) {
  return mix_seed({master, value_index, trial_index});
}

namespace {

struct TrialContext {
  std::uint64_t seed = 0;
  std::unique_ptr<Scenario> scenario;
  std::unique_ptr<ChannelSet> channels;
  baselines::HbfConfig hbf;
  std::uint64_t checksum = 0;
  std::string error;
};

std::uint64_t solver_seed(std::uint64_t trial, SchemeId scheme) {
  return mix_seed({trial, static_cast<std::uint64_t>(Stream::solver), static_cast<std::uint64_t>(scheme)});
}

void check_seed_collisions(const SweepSpec& spec) {
  std::set<std::uint64_t> trial_seeds, solver_seeds;
  const std::size_t distinct_values = spec.paired_values ? 1 : spec.values.size();
  for (std::size_t v = 0; v < distinct_values; ++v)
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const auto s = trial_seed(spec.master_seed, v, t);
      if (!trial_seeds.insert(s).second)
        throw std::runtime_error("sweep: seed collision at value " + std::to_string(v) + ", trial " +
                                 std::to_string(t));
      for (SchemeId id : spec.schemes)
        if (!solver_seeds.insert(solver_seed(s, id)).second)
          throw std::runtime_error("sweep: solver seed collision");
    }
}

void write_trace_file(const SweepSpec& spec, std::size_t value_index, const TrialResult& r,
                      const ao::SolveState& state) {
  namespace fs = std::filesystem;
  fs::create_directories(spec.trace_dir);
  std::ostringstream name;
  name << param_name(spec.param) << "_v" << value_index << '_' << scheme_name(r.scheme) << "_t"
       << r.trial << ".csv";
  std::ofstream out(fs::path(spec.trace_dir) / name.str());
  if (!out) throw std::runtime_error("cannot write trace file " + name.str());
  ao::write_trace(out, state);
}

}  // namespace

std::vector<TrialResult> run_sweep(const SweepSpec& spec) {
  spec.validate();
  check_seed_collisions(spec);

  const std::size_t n_values = spec.values.size();
  const std::size_t n_trials = spec.trials;
  const std::size_t n_schemes = spec.schemes.size();
  const auto workers = static_cast<int>(spec.workers);

  std::vector<TrialContext> contexts(n_values * n_trials);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::size_t i = 0; i < contexts.size(); ++i) {
    const std::size_t v = i / n_trials, t = i % n_trials;
    TrialContext& ctx = contexts[i];
    ctx.seed = trial_seed(spec.master_seed, spec.paired_values ? 0 : v, t);
    try {
      ScenarioConfig cfg = spec.base_config;
      ctx.hbf.antenna_count = cfg.hbf_antennas;
      apply_sweep_value(spec.param, spec.values[v], cfg, ctx.hbf);
      cfg.master_seed = ctx.seed;
      ctx.scenario = std::make_unique<Scenario>(make_scenario(cfg));
      ctx.channels = std::make_unique<ChannelSet>(synthesize_channels(*ctx.scenario, ctx.seed));
      ctx.checksum = channel_checksum(*ctx.channels);
    } catch (const std::exception& e) {
      ctx.error = e.what();
    }
  }

  std::vector<TrialResult> results(contexts.size() * n_schemes);
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::size_t i = 0; i < results.size(); ++i) {
    const std::size_t c = i / n_schemes, s = i % n_schemes;
    const std::size_t v = c / n_trials;
    const TrialContext& ctx = contexts[c];
    TrialResult& r = results[i];
    r.param = spec.param;
    r.value = spec.values[v];
    r.scheme = spec.schemes[s];
    r.trial = c % n_trials;
    r.seed = ctx.seed;
    r.channel_checksum = ctx.checksum;
    r.min_rate = std::nan("");
    if (!ctx.error.empty()) {
      r.error = ctx.error;
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      ao::SolveOptions opts = spec.solver;
      opts.seed = solver_seed(ctx.seed, r.scheme);
      const ao::Model model = baselines::scheme_model(r.scheme, *ctx.scenario, *ctx.channels, ctx.hbf);
      const ao::SolveState state = ao::solve(model, opts);
      const auto& best = state.best;
      const RateReport report = ao::evaluate(model, best.phases, best.power, best.grouping);
      r.iterations = state.iterations;
      r.user_rates.assign(report.user_rates.data(), report.user_rates.data() + report.user_rates.size());
      r.min_rate = report.min_rate;
      if (!spec.trace_dir.empty()) write_trace_file(spec, v, r, state);
    } catch (const std::exception& e) {
      r.error = e.what();
      r.min_rate = std::nan("");
      r.user_rates.clear();
    }
    r.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  return results;
}

std::vector<SummaryRow> summarize(const std::vector<TrialResult>& results, std::ostream* warnings) {
  if (results.empty()) throw std::invalid_argument("summarize: no results");
  // Keyed by first appearance so the output follows the input order.
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> samples;
  std::map<std::tuple<int, double, int>, std::size_t> index;
  for (const auto& r : results) {
    const auto key = std::make_tuple(static_cast<int>(r.param), r.value, static_cast<int>(r.scheme));
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, rows.size()).first;
      rows.push_back({r.param, r.value, r.scheme, 0, 0.0, 0.0});
      samples.emplace_back();
    }
    if (std::isfinite(r.min_rate)) samples[it->second].push_back(r.min_rate);
  }
  std::vector<SummaryRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& x = samples[i];
    SummaryRow row = rows[i];
    if (x.empty()) {
      if (warnings)
        *warnings << "summarize: no valid rows for " << param_name(row.param) << '='
                  << io::format_double(row.value) << ' ' << scheme_name(row.scheme) << ", skipped\n";
      continue;
    }
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    row.count = x.size();
    row.mean = mean;
    row.stderr_ = x.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    out.push_back(row);
  }
  return out;
}

std::string results_header() {
  return "sweep_param,sweep_value,scheme,trial,seed,r_min_bpshz,r_users_bpshz,iters,wall_ms,"
         "channel_checksum";
}

std::string format_result(const TrialResult& r) {
  std::ostringstream os;
  char checksum[17];
  std::snprintf(checksum, sizeof(checksum), "%016llx",
                static_cast<unsigned long long>(r.channel_checksum));
  char wall[32];
  std::snprintf(wall, sizeof(wall), "%.3f", r.wall_ms);
  os << param_name(r.param) << ',' << io::format_double(r.value) << ',' << scheme_name(r.scheme)
     << ',' << r.trial << ',' << r.seed << ',' << io::format_double(r.min_rate) << ','
     << io::join(r.user_rates, ';') << ',' << r.iterations << ',' << wall << ',' << checksum;
  return os.str();
}

TrialResult parse_result(const std::string& line) {
  std::vector<std::string> f;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    f.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (f.size() != 10)
    throw std::invalid_argument("results row: expected 10 fields, got " + std::to_string(f.size()));
  TrialResult r;
  const auto param = parse_param(f[0]);
  if (!param) throw std::invalid_argument("results row: unknown sweep_param '" + f[0] + "'");
  const auto scheme = parse_scheme(f[2]);
  if (!scheme) throw std::invalid_argument("results row: unknown scheme '" + f[2] + "'");
  r.param = *param;
  r.value = io::parse_double(f[1]);
  r.scheme = *scheme;
  r.trial = std::stoull(f[3]);
  r.seed = std::stoull(f[4]);
  r.min_rate = io::parse_double(f[5]);
  r.user_rates = io::split_doubles(f[6], ';');
  r.iterations = std::stoull(f[7]);
  r.wall_ms = io::parse_double(f[8]);
  r.channel_checksum = std::stoull(f[9], nullptr, 16);
  return r;
}

void write_results(std::ostream& os, const std::vector<TrialResult>& results) {
  os << results_header() << '\n';
  for (const auto& r : results) os << format_result(r) << '\n';
}

std::vector<TrialResult> read_results(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != results_header())
    throw std::invalid_argument("results file: unexpected header");
  std::vector<TrialResult> out;
  while (std::getline(is, line))
    if (!line.empty()) out.push_back(parse_result(line));
  return out;
}

std::string summary_header() { return "sweep_param,sweep_value,scheme,count,mean_r_min_bpshz,stderr_r_min_bpshz"; }

void write_summary(std::ostream& os, const std::vector<SummaryRow>& rows) {
  os << summary_header() << '\n';
  for (const auto& r : rows)
    os << param_name(r.param) << ',' << io::format_double(r.value) << ',' << scheme_name(r.scheme)
       << ',' << r.count << ',' << io::format_double(r.mean) << ',' << io::format_double(r.stderr_)
       << '\n';
}

}  // namespace simrs::harness
