#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "simrs/harness.hpp"

using namespace simrs;
using namespace simrs::harness;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.param = SweepParam::layers;
  s.values = {2, 3};
  s.schemes = {SchemeId::SimHrsma, SchemeId::NpHrsma};
  s.trials = 2;
  s.base_config.elements_per_layer = 16;
  s.base_config.num_users = 4;
  s.solver.max_iterations = 50;
  s.master_seed = 77;
  return s;
}

// CSV text with the wall-time column blanked.
std::string without_wall(const std::vector<TrialResult>& rows) {
  std::string out;
  for (auto r : rows) {
    r.wall_ms = 0.0;
    out += format_result(r) + "\n";
  }
  return out;
}

TrialResult row(double value, SchemeId id, double rmin) {
  TrialResult r;
  r.value = value;
  r.scheme = id;
  r.min_rate = rmin;
  return r;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("one value, one scheme, one trial gives one row") {
    SweepSpec s = small_spec();
    s.values = {2};
    s.schemes = {SchemeId::SimHrsma};
    s.trials = 1;
    const auto r = run_sweep(s);
    REQUIRE(r.size() == 1);
    CHECK(r[0].error.empty());
    CHECK(r[0].seed == trial_seed(77, 0, 0));
    CHECK(r[0].user_rates.size() == 4);
    double m = INFINITY;
    for (double v : r[0].user_rates) m = std::fmin(m, v);
    CHECK(r[0].min_rate == m);
  }

  TEST_CASE("sweeps are deterministic and independent of worker count") {
    SweepSpec s = small_spec();
    const auto a = run_sweep(s);
    s.workers = 3;
    const auto b = run_sweep(s);
    CHECK(without_wall(a) == without_wall(b));
  }

  TEST_CASE("schemes share channels within a trial") {
    const auto r = run_sweep(small_spec());
    REQUIRE(r.size() == 8);
    for (std::size_t i = 0; i < r.size(); i += 2) {
      CHECK(r[i].channel_checksum == r[i + 1].channel_checksum);
      CHECK(r[i].seed == r[i + 1].seed);
    }
    std::set<std::uint64_t> seeds;
    for (const auto& x : r) seeds.insert(x.seed);
    CHECK(seeds.size() == 4);
  }

  TEST_CASE("adding a scheme leaves the others unchanged") {
    SweepSpec s = small_spec();
    s.schemes = {SchemeId::SimHrsma};
    const auto alone = run_sweep(s);
    s.schemes = {SchemeId::NpRsma, SchemeId::SimHrsma};
    const auto both = run_sweep(s);
    std::vector<TrialResult> picked;
    for (const auto& x : both)
      if (x.scheme == SchemeId::SimHrsma) picked.push_back(x);
    CHECK(without_wall(alone) == without_wall(picked));
  }

  TEST_CASE("paired values reuse the drop at every value") {
    SweepSpec s = small_spec();
    s.param = SweepParam::power;
    s.values = {10, 20};
    s.paired_values = true;
    const auto r = run_sweep(s);
    CHECK(r[0].seed == r[4].seed);
    CHECK(r[0].channel_checksum == r[4].channel_checksum);
  }

  TEST_CASE("failed trials are recorded and the sweep continues") {
    SweepSpec s = small_spec();
    s.param = SweepParam::elements;
    s.values = {20, 16};  // 20 is not a square
    s.schemes = {SchemeId::NpRsma};
    const auto r = run_sweep(s);
    REQUIRE(r.size() == 4);
    CHECK(std::isnan(r[0].min_rate));
    CHECK_FALSE(r[0].error.empty());
    CHECK(r[2].error.empty());
    CHECK(std::isfinite(r[2].min_rate));
  }

  TEST_CASE("sweep values map onto the configuration") {
    ScenarioConfig c;
    baselines::HbfConfig h;
    apply_sweep_value(SweepParam::power, 30, c, h);
    CHECK(c.transmit_power == doctest::Approx(1.0));
    apply_sweep_value(SweepParam::antennas, 36, c, h);
    CHECK(h.antenna_count == 36);
    apply_sweep_value(SweepParam::spacing, 5.0 / 24, c, h);
    CHECK(c.layer_spacing_lambda == 5.0 / 24);
    CHECK_THROWS(apply_sweep_value(SweepParam::layers, 2.5, c, h));
  }

  TEST_CASE("invalid specs are rejected") {
    SweepSpec s = small_spec();
    s.values.clear();
    CHECK_THROWS(run_sweep(s));
    s = small_spec();
    s.trials = 0;
    CHECK_THROWS(run_sweep(s));
    s = small_spec();
    s.schemes = {SchemeId::SimHrsma, SchemeId::SimHrsma};
    CHECK_THROWS(run_sweep(s));
  }

  TEST_CASE("summary statistics") {
    const auto one = summarize({row(1, SchemeId::SimHrsma, 1.5)});
    REQUIRE(one.size() == 1);
    CHECK(one[0].mean == 1.5);
    CHECK(one[0].stderr_ == 0.0);

    const auto flat = summarize({row(1, SchemeId::SimHrsma, 2.0), row(1, SchemeId::SimHrsma, 2.0),
                                 row(1, SchemeId::SimHrsma, 2.0)});
    CHECK(flat[0].stderr_ == 0.0);

    const auto two = summarize({row(1, SchemeId::SimHrsma, 1.0), row(1, SchemeId::SimHrsma, 3.0)});
    CHECK(two[0].mean == doctest::Approx(2.0));
    CHECK(two[0].stderr_ == doctest::Approx(1.0));

    std::ostringstream warn;
    const auto mixed = summarize({row(1, SchemeId::SimHrsma, NAN), row(2, SchemeId::SimHrsma, 1.0)}, &warn);
    CHECK(mixed.size() == 1);
    CHECK(mixed[0].value == 2);
    CHECK(warn.str().find("skipped") != std::string::npos);
    CHECK_THROWS(summarize({}));
  }

  TEST_CASE("result rows round trip losslessly") {
    TrialResult r;
    r.param = SweepParam::spacing;
    r.value = 5.0 / 24;
    r.scheme = SchemeId::HbfRsma;
    r.trial = 12;
    r.seed = 18446744073709551557ull;
    r.min_rate = 0.1 + 0.2;
    r.user_rates = {0.1 + 0.2, 1.0 / 3, 2.5e-300};
    r.iterations = 3000;
    r.wall_ms = 12.5;
    r.channel_checksum = 0xfedcba9876543210ull;
    const TrialResult back = parse_result(format_result(r));
    CHECK(back.param == r.param);
    CHECK(back.value == r.value);
    CHECK(back.scheme == r.scheme);
    CHECK(back.trial == r.trial);
    CHECK(back.seed == r.seed);
    CHECK(back.min_rate == r.min_rate);
    CHECK(back.user_rates == r.user_rates);
    CHECK(back.iterations == r.iterations);
    CHECK(back.wall_ms == r.wall_ms);
    CHECK(back.channel_checksum == r.channel_checksum);
    CHECK(format_result(back) == format_result(r));

    std::stringstream ss;
    write_results(ss, {r, r});
    CHECK(ss.str().rfind(results_header(), 0) == 0);
    CHECK(read_results(ss).size() == 2);
    CHECK_THROWS(parse_result("layers,2,sim_hrsma"));
  }

  TEST_CASE("results header lists the documented columns") {
    CHECK(results_header() ==
          "sweep_param,sweep_value,scheme,trial,seed,r_min_bpshz,r_users_bpshz,iters,wall_ms,channel_checksum");
  }
}
