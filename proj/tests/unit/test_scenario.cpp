#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "simrs/scenario.hpp"

using namespace simrs;

TEST_SUITE("scenario") {
  TEST_CASE("single element layout sits at its center") {
    const auto l = build_upa_layout(1, 1, 0.0053, {1, 2, 3});
    CHECK(l.size() == 1);
    CHECK(l.position(0) == Vec3{1, 2, 3});
  }

  TEST_CASE("2x2 layout is centered") {
    const auto l = build_upa_layout(2, 2, 1.0, {});
    CHECK(l.offset(0) == Vec3{-0.5, 0, -0.5});
    CHECK(l.offset(1) == Vec3{0.5, 0, -0.5});
    CHECK(l.offset(2) == Vec3{-0.5, 0, 0.5});
    CHECK(l.offset(3) == Vec3{0.5, 0, 0.5});
  }

  TEST_CASE("8x8 layout at 28 GHz spans seven half wavelengths") {
    const double lambda = kSpeedOfLight / 28e9;
    CHECK(lambda == doctest::Approx(0.010707).epsilon(1e-4));
    const auto l = build_upa_layout(8, 8, lambda / 2, {});
    CHECK(l.size() == 64);
    CHECK(l.position(63).x - l.position(0).x == doctest::Approx(0.03748).epsilon(1e-3));
    CHECK(l.position(63).z - l.position(0).z == doctest::Approx(7 * lambda / 2));
  }

  TEST_CASE("invalid layouts throw") {
    CHECK_THROWS_AS(build_upa_layout(0, 2, 1.0, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_upa_layout(2, 2, 0.0, {}), std::invalid_argument);
  }

  TEST_CASE("clustered users stay in their discs and the sector") {
    const std::vector<double> radii{30, 300};
    const std::vector<std::size_t> counts{3, 3};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto u = generate_clustered_users(seed, 30, radii, 10, counts, 1.5);
      REQUIRE(u.size() == 6);
      for (std::size_t c = 0; c < 2; ++c) {
        // Members are pairwise within the disc diameter, and the disc center is on the arc.
        for (std::size_t i = 0; i < 3; ++i) {
          const auto& p = u[3 * c + i];
          CHECK(p.z == 1.5);
          const double rho = std::hypot(p.x, p.y);
          CHECK(std::fabs(rho - radii[c]) <= 5.0 + 1e-9);
          CHECK(std::fabs(std::atan2(p.x, p.y)) <= 30.0 * kPi / 180.0 + 1e-12);
          for (std::size_t j = 0; j < 3; ++j) CHECK((p - u[3 * c + j]).norm() <= 10.0 + 1e-9);
        }
      }
    }
  }

  TEST_CASE("zero cluster diameter collapses users onto the center") {
    const std::vector<double> radii{30};
    const std::vector<std::size_t> counts{4};
    const auto u = generate_clustered_users(3, 30, radii, 0.0, counts, 1.5);
    for (const auto& p : u) {
      CHECK(p == u[0]);
      CHECK(std::hypot(p.x, p.y) == doctest::Approx(30.0));
    }
  }

  TEST_CASE("user drops are deterministic in the seed") {
    const std::vector<double> radii{30, 300};
    const std::vector<std::size_t> counts{3, 3};
    CHECK(generate_clustered_users(9, 30, radii, 10, counts, 1.5) ==
          generate_clustered_users(9, 30, radii, 10, counts, 1.5));
    CHECK(generate_clustered_users(9, 30, radii, 10, counts, 1.5) !=
          generate_clustered_users(10, 30, radii, 10, counts, 1.5));
  }

  TEST_CASE("default configuration reproduces the reference table") {
    const ScenarioConfig c;
    CHECK(c.num_users == 6);
    CHECK(c.num_groups == 2);
    CHECK(c.num_layers == 7);
    CHECK(c.elements_per_layer == 64);
    CHECK(watt_to_dbm(c.transmit_power) == doctest::Approx(20.0));
    CHECK(watt_to_dbm(c.noise_power) == doctest::Approx(-94.0));
    CHECK(linear_to_db(c.rician_factor) == doctest::Approx(13.0));
    CHECK(c.layer_spacing_lambda == 0.25);
    CHECK(c.element_spacing_lambda == 0.5);
    const Scenario s = make_scenario(c);
    CHECK(s.stream_count() == 9);
    CHECK(s.geometry.active_antennas == 9);
    CHECK(s.geometry.feed_layout.size() == 9);
    CHECK(s.geometry.layer_layouts.size() == 7);
    CHECK(s.user_positions.size() == 6);
    CHECK(s.geometry.element_area == doctest::Approx(std::pow(c.wavelength() / 2, 2)));
  }

  TEST_CASE("layers are stacked along the normal at the configured gap") {
    ScenarioConfig c;
    c.num_layers = 3;
    const SimGeometry g = build_geometry(c);
    const double d = 0.25 * c.wavelength();
    for (std::size_t l = 0; l < 3; ++l)
      CHECK(g.layer_layouts[l].center().y == doctest::Approx(static_cast<double>(l + 1) * d));
  }

  TEST_CASE("single user without groups is valid") {
    ScenarioConfig c;
    c.num_users = 1;
    c.num_groups = 0;
    c.cluster_radii = {30};
    const Scenario s = make_scenario(c);
    CHECK(s.stream_count() == 2);
  }

  TEST_CASE("more groups than users is rejected with the field name") {
    ScenarioConfig c;
    c.num_users = 2;
    c.num_groups = 3;
    try {
      validate(c);
      FAIL("expected rejection");
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find("num_groups") != std::string::npos);
    }
  }

  TEST_CASE("non-square element counts are rejected") {
    ScenarioConfig c;
    c.elements_per_layer = 20;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
  }

  TEST_CASE("even user split puts the remainder first") {
    CHECK(split_users(7, 2) == std::vector<std::size_t>{4, 3});
    CHECK(split_users(6, 3) == std::vector<std::size_t>{2, 2, 2});
  }

  TEST_CASE("restructuring keeps the drop and rebuilds the feed") {
    const Scenario s = make_scenario(ScenarioConfig{});
    const Scenario r = with_num_groups(s, 0);
    CHECK(r.user_positions == s.user_positions);
    CHECK(r.stream_count() == 7);
    CHECK(r.geometry.active_antennas == 7);
  }
}
