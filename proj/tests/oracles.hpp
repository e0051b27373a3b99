#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Written with plain loops and std::complex, without the library's matrix code.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Grid = std::vector<std::vector<C>>;
using RGrid = std::vector<std::vector<double>>;

constexpr double kPi = 3.14159265358979323846;

struct P3 {
  double x, y, z;
};

// Near-field diffraction coefficient between two points of parallel layers with normal +y.
inline C rs(const P3& src, const P3& dst, double area, double lambda) {
  const double dx = dst.x - src.x, dy = dst.y - src.y, dz = dst.z - src.z;
  const double t = std::sqrt(dx * dx + dy * dy + dz * dz);
  const double cos_eta = std::fabs(dy) / t;
  const C bracket(1.0 / (2.0 * kPi * t), -1.0 / lambda);
  const double phase = 2.0 * kPi * t / lambda;
  return (area * cos_eta / t) * bracket * C(std::cos(phase), std::sin(phase));
}

// H(k, u1) summed over every path u_L -> ... -> u_1 through the stack.
// q is K x U; w[l] maps layer l+1 (0-based) to layer l+2: w[l][next][prev]; theta is L x U.
inline Grid cascade_sum(const Grid& q, const std::vector<Grid>& w, const RGrid& theta) {
  const std::size_t k_users = q.size(), u_count = q[0].size(), layers = theta.size();
  Grid h(k_users, std::vector<C>(u_count));
  auto psi = [&](std::size_t l, std::size_t u) { return std::polar(1.0, theta[l][u]); };
  std::vector<std::size_t> path(layers);
  for (std::size_t k = 0; k < k_users; ++k)
    for (std::size_t u1 = 0; u1 < u_count; ++u1) {
      C total = 0.0;
      // Enumerate u_2..u_L as a mixed-radix counter.
      std::size_t combos = 1;
      for (std::size_t l = 1; l < layers; ++l) combos *= u_count;
      for (std::size_t idx = 0; idx < combos; ++idx) {
        std::size_t rem = idx;
        path[0] = u1;
        for (std::size_t l = 1; l < layers; ++l) {
          path[l] = rem % u_count;
          rem /= u_count;
        }
        C term = q[k][path[layers - 1]] * psi(layers - 1, path[layers - 1]);
        for (std::size_t l = layers - 1; l >= 1; --l)
          term *= w[l - 1][path[l]][path[l - 1]] * psi(l - 1, path[l - 1]);
        total += term;
      }
      h[k][u1] = total;
    }
  return h;
}

struct Rates {
  std::vector<double> gamma_c, gamma_g, gamma_p;  // per user; gamma_g for the user's own group
  std::vector<double> user;
  double min_rate = 0.0;
};

// gains[k][i] = |h_k v_i|^2 with stream order [c, g_1..g_N, p_1..p_K];
// p in the same order; group[k] in 0..N-1 (ignored when N = 0).
inline Rates hrsma_rates(const RGrid& gains, const std::vector<double>& p,
                         const std::vector<std::size_t>& group, std::size_t n_groups, double noise) {
  const std::size_t K = gains.size();
  Rates r;
  r.gamma_c.resize(K);
  r.gamma_g.assign(K, 0.0);
  r.gamma_p.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    double priv_all = 0.0;
    for (std::size_t j = 0; j < K; ++j) priv_all += p[1 + n_groups + j] * gains[k][1 + n_groups + j];
    double groups_all = 0.0;
    for (std::size_t n = 0; n < n_groups; ++n) groups_all += p[1 + n] * gains[k][1 + n];
    r.gamma_c[k] = p[0] * gains[k][0] / (groups_all + priv_all + noise);
    if (n_groups > 0) {
      const std::size_t n = group[k];
      double other_groups = 0.0;
      for (std::size_t l = 0; l < n_groups; ++l)
        if (l != n) other_groups += p[1 + l] * gains[k][1 + l];
      r.gamma_g[k] = p[1 + n] * gains[k][1 + n] / (other_groups + priv_all + noise);
    }
    double other_priv = 0.0;
    for (std::size_t j = 0; j < K; ++j)
      if (j != k) other_priv += p[1 + n_groups + j] * gains[k][1 + n_groups + j];
    r.gamma_p[k] = p[1 + n_groups + k] * gains[k][1 + n_groups + k] / (other_priv + noise);
  }
  double rc = INFINITY;
  for (double g : r.gamma_c) rc = std::fmin(rc, std::log2(1.0 + g));
  std::vector<double> rg(n_groups, INFINITY);
  std::vector<double> size(n_groups, 0.0);
  for (std::size_t k = 0; k < K && n_groups > 0; ++k) {
    rg[group[k]] = std::fmin(rg[group[k]], std::log2(1.0 + r.gamma_g[k]));
    size[group[k]] += 1.0;
  }
  r.user.resize(K);
  r.min_rate = INFINITY;
  for (std::size_t k = 0; k < K; ++k) {
    double v = rc / static_cast<double>(K) + std::log2(1.0 + r.gamma_p[k]);
    if (n_groups > 0) v += rg[group[k]] / size[group[k]];
    r.user[k] = v;
    r.min_rate = std::fmin(r.min_rate, v);
  }
  return r;
}

}  // namespace oracle
