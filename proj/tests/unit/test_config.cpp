#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "simrs/config.hpp"

using namespace simrs;

TEST_SUITE("config") {
  TEST_CASE("empty overrides keep defaults") {
    ScenarioConfig s;
    ao::SolveOptions o;
    apply_config(parse_config_text("# nothing\n\n"), s, o);
    CHECK(s.num_users == 6);
    CHECK(o.max_iterations == 3000);
  }

  TEST_CASE("values, units and comments are parsed") {
    ScenarioConfig s;
    ao::SolveOptions o;
    apply_config(parse_config_text("num_layers = 4  # fewer\n"
                                   "transmit_power_dbm = 30\n"
                                   "rician_factor_db = 10\n"
                                   "layer_spacing_lambda = 5/24\n"
                                   "cluster_radii = 20, 200\n"
                                   "users_per_cluster = 4,2\n"
                                   "phase_a = 0.5\n"
                                   "feature_mode = magnitude\n"),
                 s, o);
    CHECK(s.num_layers == 4);
    CHECK(s.transmit_power == doctest::Approx(1.0));
    CHECK(s.rician_factor == doctest::Approx(10.0));
    CHECK(s.layer_spacing_lambda == doctest::Approx(5.0 / 24.0));
    CHECK(s.cluster_radii == std::vector<double>{20, 200});
    CHECK(s.users_per_cluster == std::vector<std::size_t>{4, 2});
    CHECK(o.phase_gains.a == 0.5);
    CHECK(o.features == grouping::FeatureMode::magnitude);
  }

  TEST_CASE("absolute layer spacing follows the configured carrier") {
    ScenarioConfig s;
    ao::SolveOptions o;
    apply_config(parse_config_text("layer_spacing = 0.01\ncarrier_frequency = 14e9\n"), s, o);
    CHECK(s.layer_spacing_lambda == doctest::Approx(0.01 / (kSpeedOfLight / 14e9)));
  }

  TEST_CASE("unknown keys and bad values name the key") {
    ScenarioConfig s;
    ao::SolveOptions o;
    try {
      apply_config(parse_config_text("num_userz = 3\n"), s, o);
      FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("num_userz") != std::string::npos);
    }
    CHECK_THROWS_AS(apply_config(parse_config_text("num_users = -3\n"), s, o), std::invalid_argument);
    CHECK_THROWS_AS(apply_config(parse_config_text("noise_power = abc\n"), s, o), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("no equals sign\n"), std::invalid_argument);
  }

  TEST_CASE("numbers accept fractions and infinity") {
    CHECK(parse_number("5/24") == doctest::Approx(5.0 / 24.0));
    CHECK(std::isinf(parse_number("inf")));
    CHECK(parse_number(" 2.5 ") == 2.5);
  }
}
