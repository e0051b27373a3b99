#include <doctest.h>

#include <cmath>

#include "simrs/baselines.hpp"

using namespace simrs;
using namespace simrs::baselines;

namespace {

Scenario desk(std::size_t users = 4, std::size_t groups = 2, std::uint64_t seed = 1) {
  ScenarioConfig c;
  c.num_layers = 4;
  c.elements_per_layer = 16;
  c.num_users = users;
  c.num_groups = groups;
  c.master_seed = seed;
  if (users == 1) c.cluster_radii = {30};
  return make_scenario(c);
}

CMatrix random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = {n(rng), n(rng)};
  return m;
}

double cosine(const CVector& a, const CVector& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_SUITE("baselines") {
  TEST_CASE("scheme names round trip") {
    for (SchemeId id : kAllSchemes) CHECK(parse_scheme(scheme_name(id)) == id);
    CHECK_FALSE(parse_scheme("bogus").has_value());
    CHECK(is_hierarchical(SchemeId::HbfHrsma));
    CHECK_FALSE(is_hierarchical(SchemeId::SimRsma));
  }

  TEST_CASE("heavily regularized RZF tends to the matched filter") {
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
      const CMatrix h = random_matrix(4, 9, rng);
      const CMatrix f = rzf_precoder(h, 1e9);
      const CMatrix mf = h.adjoint();
      for (Eigen::Index k = 0; k < 4; ++k) CHECK(cosine(f.col(k), mf.col(k)) > 0.999);
    }
  }

  TEST_CASE("DFT analog stage reduces to digital RZF") {
    Rng rng(2);
    const std::size_t N = 2, K = 4, rf = 1 + N + K;
    const CMatrix g = random_matrix(K, rf, rng);
    const Grouping grp{N, {0, 1, 1, 0}};
    const double alpha = 0.3;
    const CMatrix hybrid = hbf_precoder(g, dft_angles(rf), grp, N, alpha);
    // Unitary-up-to-scale analog stage: F_RF F_RF^H = N_RF I.
    const CMatrix digital = rzf_precoder(g, alpha / static_cast<double>(rf));
    CMatrix expected = CMatrix::Zero(rf, rf);
    expected.col(0) = digital.rowwise().sum();
    for (std::size_t k = 0; k < K; ++k) {
      expected.col(static_cast<Eigen::Index>(1 + grp.assignment[k])) += digital.col(static_cast<Eigen::Index>(k));
      expected.col(static_cast<Eigen::Index>(1 + N + k)) = digital.col(static_cast<Eigen::Index>(k));
    }
    for (Eigen::Index i = 0; i < expected.cols(); ++i) {
      expected.col(i).normalize();
      CHECK((hybrid.col(i) - expected.col(i)).norm() < 1e-10);
      CHECK(hybrid.col(i).norm() == doctest::Approx(1.0));
    }
  }

  TEST_CASE("SIM-RSMA consumes 1+K feed antennas and matches HRSMA with no groups") {
    const Scenario s = desk(4, 2);
    const ChannelSet c = synthesize_channels(s, 3);
    const ao::Model m = scheme_model(SchemeId::SimRsma, s, c);
    CHECK(m.num_groups == 0);
    const RVector x = RVector::Constant(m.phase_dim, 0.4);
    CHECK(m.end_to_end(x, Grouping{}).cols() == 5);

    const Scenario one = desk(1, 1);
    const ChannelSet c1 = synthesize_channels(one, 3);
    const Scenario one_flat = with_num_groups(one, 0);
    const auto [rs, rc] = restructure(one, c1, 0);
    const RVector y = RVector::Constant(64, 1.3);
    const CMatrix a = scheme_model(SchemeId::SimRsma, one, c1).end_to_end(y, Grouping{});
    const CMatrix b = ao::sim_model(rs, rc).end_to_end(y, Grouping{});
    CHECK(a == b);
    CHECK(one_flat.stream_count() == 2);
  }

  TEST_CASE("single-user non-precoding RSMA is near the best power split") {
    const Scenario s = desk(1, 0);
    const ChannelSet c = synthesize_channels(s, 4);
    const ao::Model m = non_precoding_model(s, c, false);
    double best = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double pc = s.transmit_power * i / 1000.0;
      RVector p(2);
      p << pc, s.transmit_power - pc;
      best = std::max(best, ao::evaluate(m, RVector(), PowerAllocation(p, 0, 1), Grouping{}).min_rate);
    }
    ao::SolveOptions o;
    o.max_iterations = 2000;
    const auto st = ao::solve(m, o);
    CHECK(st.best.min_rate >= 0.95 * best);
  }

  TEST_CASE("co-located users with equal powers get equal rates") {
    ScenarioConfig cfg;
    cfg.num_layers = 2;
    cfg.elements_per_layer = 16;
    cfg.num_users = 3;
    cfg.num_groups = 0;
    cfg.cluster_radii = {30};
    cfg.cluster_diameter = 0.0;
    cfg.rician_factor = INFINITY;
    const Scenario s = make_scenario(cfg);
    const ChannelSet c = synthesize_channels(s, 1);
    const ao::Model m = non_precoding_model(s, c, false);
    const auto rep = ao::evaluate(m, RVector(), PowerAllocation(RVector::Constant(4, 0.025), 0, 3), Grouping{});
    CHECK(rep.user_rates.maxCoeff() - rep.user_rates.minCoeff() < 1e-12);
  }

  TEST_CASE("non-precoding trails the SIM scheme on average") {
    double sim = 0.0, np = 0.0;
    ao::SolveOptions o;
    o.max_iterations = 1000;
    for (std::uint64_t t = 1; t <= 4; ++t) {
      const Scenario s = desk(4, 2, t);
      const ChannelSet c = synthesize_channels(s, t);
      sim += run_scheme(SchemeId::SimHrsma, s, c, o).best.min_rate;
      np += run_scheme(SchemeId::NpHrsma, s, c, o).best.min_rate;
    }
    CHECK(np <= sim);
  }

  TEST_CASE("more HBF antennas raise the mean rate") {
    double small = 0.0, large = 0.0;
    ao::SolveOptions o;
    o.max_iterations = 1000;
    for (std::uint64_t t = 1; t <= 4; ++t) {
      const Scenario s = desk(4, 2, t);
      const ChannelSet c = synthesize_channels(s, t);
      small += run_scheme(SchemeId::HbfHrsma, s, c, o, HbfConfig{9, false}).best.min_rate;
      large += run_scheme(SchemeId::HbfHrsma, s, c, o, HbfConfig{64, false}).best.min_rate;
    }
    CHECK(large > small);
  }

  TEST_CASE("HBF configuration checks") {
    const Scenario s = desk();
    const ChannelSet c = synthesize_channels(s, 1);
    CHECK_THROWS(hbf_model(s, c, true, HbfConfig{4, false}));
    CHECK_THROWS(hbf_model(s, c, true, HbfConfig{16, true}));
    const auto m = hbf_model(s, c, true, HbfConfig{0, true});
    CHECK(m.phase_dim == 0);
    CHECK(hbf_model(s, c, false, HbfConfig{16, false}).phase_dim == 16 * 5);
  }
}
