// Serial reference vs optimized vs OpenMP timings for the cascade and the
// inter-layer matrix fill. Usage: bench_kernels [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <omp.h>

#include "simrs/channel.hpp"
#include "simrs/kernels.hpp"
#include "simrs/scenario.hpp"

using namespace simrs;

namespace {

template <class F>
double time_ms(int repeats, F f) {
  f();  // warm-up
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count() /
         repeats;
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("threads available: %d\n", omp_get_max_threads());
  std::printf("%-8s %5s %5s %12s %12s %12s\n", "kernel", "L", "U", "reference_ms", "serial_ms",
              "parallel_ms");

  Rng rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> a(0.0, kTwoPi);
  const double lambda = kSpeedOfLight / 28e9;

  for (std::size_t side : {4u, 8u, 10u, 16u}) {
    const std::size_t u = side * side, layers = 7, k = 6;
    const UpaLayout prev = build_upa_layout(side, side, lambda / 2, {0, 0, 0});
    const UpaLayout next = build_upa_layout(side, side, lambda / 2, {0, lambda / 4, 0});

    const double area = lambda * lambda / 4;
    auto fn = [&](std::size_t r, std::size_t c) {
      return rs_coefficient(prev.position(c), next.position(r), next.normal(), area, lambda);
    };
    const double f_ref = time_ms(repeats, [&] { kernels::fill_reference(u, u, fn); });
    const double f_ser = time_ms(repeats, [&] { kernels::fill(u, u, fn, kernels::Exec::serial); });
    const double f_par = time_ms(repeats, [&] { kernels::fill(u, u, fn, kernels::Exec::parallel); });
    std::printf("%-8s %5zu %5zu %12.3f %12.3f %12.3f\n", "fill", layers, u, f_ref, f_ser, f_par);

    const CMatrix w = inter_layer_matrix(prev, next, area, lambda, kernels::Exec::serial);
    std::vector<CMatrix> inter(layers - 1, w);
    CMatrix q(k, u);
    for (Eigen::Index i = 0; i < q.size(); ++i) q(i) = {n(rng), n(rng)};
    RMatrix angles(layers, u);
    for (Eigen::Index i = 0; i < angles.size(); ++i) angles(i) = a(rng);

    const double c_ref = time_ms(repeats, [&] { kernels::cascade_reference(q, angles, inter); });
    const double c_ser =
        time_ms(repeats, [&] { kernels::cascade(q, angles, inter, kernels::Exec::serial); });
    const double c_par =
        time_ms(repeats, [&] { kernels::cascade(q, angles, inter, kernels::Exec::parallel); });
    std::printf("%-8s %5zu %5zu %12.3f %12.3f %12.3f\n", "cascade", layers, u, c_ref, c_ser, c_par);
  }
  return 0;
}
