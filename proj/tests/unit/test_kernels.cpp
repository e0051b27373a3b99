#include <doctest.h>

#include <vector>

#include "simrs/kernels.hpp"
#include "simrs/rng.hpp"

using namespace simrs;

namespace {

CMatrix random_matrix(Eigen::Index r, Eigen::Index c, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = {n(rng), n(rng)};
  return m;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("optimized cascade matches the serial reference") {
    Rng rng(11);
    std::uniform_real_distribution<double> a(0.0, kTwoPi);
    for (Eigen::Index layers : {1, 2, 5}) {
      const Eigen::Index u = 25, k = 4;
      std::vector<CMatrix> w;
      for (Eigen::Index l = 1; l < layers; ++l) w.push_back(random_matrix(u, u, rng));
      const CMatrix q = random_matrix(k, u, rng);
      RMatrix angles(layers, u);
      for (Eigen::Index i = 0; i < angles.size(); ++i) angles(i) = a(rng);
      const CMatrix ref = kernels::cascade_reference(q, angles, w);
      for (auto exec : {kernels::Exec::serial, kernels::Exec::parallel, kernels::Exec::automatic}) {
        const CMatrix got = kernels::cascade(q, angles, w, exec);
        CHECK((got - ref).norm() <= 1e-12 * ref.norm());
      }
    }
  }

  TEST_CASE("parallel fill matches the serial reference exactly") {
    auto fn = [](std::size_t r, std::size_t c) {
      return cplx{static_cast<double>(r) * 0.5, -static_cast<double>(c)};
    };
    const CMatrix ref = kernels::fill_reference(7, 5, fn);
    CHECK(ref(3, 2) == cplx{1.5, -2.0});
    CHECK(kernels::fill(7, 5, fn, kernels::Exec::parallel) == ref);
    CHECK(kernels::fill(7, 5, fn, kernels::Exec::serial) == ref);
  }

  TEST_CASE("automatic mode stays serial for small work") {
    CHECK_FALSE(kernels::use_parallel(kernels::Exec::automatic, 100.0));
    CHECK_FALSE(kernels::use_parallel(kernels::Exec::serial, 1e12));
  }

  TEST_CASE("stream gains are squared magnitudes") {
    CMatrix h(1, 2);
    h << cplx{3, 4}, cplx{0, -2};
    const RMatrix g = kernels::stream_gains(h);
    CHECK(g(0, 0) == 25.0);
    CHECK(g(0, 1) == 4.0);
  }
}
