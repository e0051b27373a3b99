#include "simrs/grouping.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace simrs::grouping {

UserFeatures user_features(const CMatrix& end_to_end, FeatureMode mode) {
  const Eigen::Index k_users = end_to_end.rows();
  const Eigen::Index n = end_to_end.cols();
  UserFeatures f;
  if (mode == FeatureMode::reim) {
    f.rows.resize(k_users, 2 * n);
    f.rows.leftCols(n) = end_to_end.real();
    f.rows.rightCols(n) = end_to_end.imag();
  } else {
    f.rows = end_to_end.cwiseAbs();
  }
  for (Eigen::Index k = 0; k < k_users; ++k) {
    const double norm = f.rows.row(k).norm();
    if (norm > 0.0)
      f.rows.row(k) /= norm;
    else
      f.zero_rows.push_back(static_cast<std::size_t>(k));
  }
  return f;
}

namespace {

struct Lloyd {
  std::vector<std::size_t> labels;
  double inertia = 0.0;
  std::vector<double> trace;
};

RMatrix seed_centers(const RMatrix& x, std::size_t n_groups, Rng& rng) {
  const Eigen::Index n_points = x.rows();
  RMatrix centers(static_cast<Eigen::Index>(n_groups), x.cols());
  std::vector<bool> used(static_cast<std::size_t>(n_points), false);
  std::uniform_int_distribution<Eigen::Index> pick(0, n_points - 1);
  Eigen::Index first = pick(rng);
  centers.row(0) = x.row(first);
  used[static_cast<std::size_t>(first)] = true;

  RVector d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t c = 1; c < n_groups; ++c) {
    const double total = d2.sum();
    Eigen::Index chosen = -1;
    if (total > 0.0) {
      double r = unit(rng) * total;
      for (Eigen::Index i = 0; i < n_points; ++i) {
        r -= d2(i);
        if (r < 0.0 && d2(i) > 0.0) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0)
        for (Eigen::Index i = n_points - 1; i >= 0; --i)
          if (d2(i) > 0.0) {
            chosen = i;
            break;
          }
    } else {
      // All remaining points coincide with a center: take an unused index.
      std::vector<Eigen::Index> free;
      for (Eigen::Index i = 0; i < n_points; ++i)
        if (!used[static_cast<std::size_t>(i)]) free.push_back(i);
      std::uniform_int_distribution<std::size_t> pf(0, free.size() - 1);
      chosen = free[pf(rng)];
    }
    used[static_cast<std::size_t>(chosen)] = true;
    centers.row(static_cast<Eigen::Index>(c)) = x.row(chosen);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(static_cast<Eigen::Index>(c))).rowwise().squaredNorm());
  }
  return centers;
}

double assign(const RMatrix& x, const RMatrix& centers, std::vector<std::size_t>& labels) {
  double inertia = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (Eigen::Index c = 0; c < centers.rows(); ++c) {
      const double d = (x.row(i) - centers.row(c)).squaredNorm();
      if (d < best) {
        best = d;
        arg = static_cast<std::size_t>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
    inertia += best;
  }
  return inertia;
}

// Moves points into empty clusters: the point farthest from its centroid among
// clusters that still have more than one member. Returns true if anything moved.
bool reseed_empty(const RMatrix& x, RMatrix& centers, std::vector<std::size_t>& labels) {
  const std::size_t n_groups = static_cast<std::size_t>(centers.rows());
  bool moved = false;
  for (std::size_t c = 0; c < n_groups; ++c) {
    std::vector<std::size_t> count(n_groups, 0);
    for (std::size_t l : labels) ++count[l];
    if (count[c] > 0) continue;
    double far = -1.0;
    std::size_t who = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (count[labels[i]] < 2) continue;
      const double d = (x.row(static_cast<Eigen::Index>(i)) -
                        centers.row(static_cast<Eigen::Index>(labels[i])))
                           .squaredNorm();
      if (d > far) {
        far = d;
        who = i;
      }
    }
    labels[who] = c;
    centers.row(static_cast<Eigen::Index>(c)) = x.row(static_cast<Eigen::Index>(who));
    moved = true;
  }
  return moved;
}

void update_centers(const RMatrix& x, const std::vector<std::size_t>& labels, RMatrix& centers) {
  RMatrix sum = RMatrix::Zero(centers.rows(), centers.cols());
  std::vector<double> count(static_cast<std::size_t>(centers.rows()), 0.0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    sum.row(static_cast<Eigen::Index>(labels[i])) += x.row(static_cast<Eigen::Index>(i));
    count[labels[i]] += 1.0;
  }
  for (Eigen::Index c = 0; c < centers.rows(); ++c)
    if (count[static_cast<std::size_t>(c)] > 0.0)
      centers.row(c) = sum.row(c) / count[static_cast<std::size_t>(c)];
}

double inertia_of(const RMatrix& x, const RMatrix& centers, const std::vector<std::size_t>& labels) {
  double s = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    s += (x.row(static_cast<Eigen::Index>(i)) - centers.row(static_cast<Eigen::Index>(labels[i])))
             .squaredNorm();
  return s;
}

Lloyd run_lloyd(const RMatrix& x, std::size_t n_groups, std::size_t max_iters, Rng& rng) {
  RMatrix centers = seed_centers(x, n_groups, rng);
  Lloyd out;
  out.labels.assign(static_cast<std::size_t>(x.rows()), 0);
  assign(x, centers, out.labels);
  reseed_empty(x, centers, out.labels);
  out.trace.push_back(inertia_of(x, centers, out.labels));
  for (std::size_t it = 0; it < max_iters; ++it) {
    update_centers(x, out.labels, centers);
    std::vector<std::size_t> next(out.labels.size());
    assign(x, centers, next);
    reseed_empty(x, centers, next);
    out.trace.push_back(inertia_of(x, centers, next));
    const bool changed = next != out.labels;
    out.labels = std::move(next);
    if (!changed) break;
  }
  update_centers(x, out.labels, centers);
  out.inertia = inertia_of(x, centers, out.labels);
  return out;
}

}  // namespace

KMeansResult kmeans(const RMatrix& points, std::size_t num_groups, const KMeansOptions& options,
                    Rng& rng) {
  if (num_groups == 0) throw std::invalid_argument("kmeans: need at least one group");
  if (num_groups > static_cast<std::size_t>(points.rows()))
    throw std::invalid_argument("kmeans: more groups than users");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  const std::size_t reps = std::max<std::size_t>(1, options.replicates);
  for (std::size_t r = 0; r < reps; ++r) {
    Lloyd l = run_lloyd(points, num_groups, options.max_iters, rng);
    if (l.inertia < best.inertia) {
      best.inertia = l.inertia;
      best.grouping = Grouping{num_groups, std::move(l.labels)};
      best.inertia_trace = std::move(l.trace);
    }
  }
  return best;
}

Grouping kmeans_partition(const UserFeatures& features, std::size_t num_groups,
                          const KMeansOptions& options, Rng& rng) {
  return kmeans(features.rows, num_groups, options, rng).grouping;
}

RefineResult greedy_refine(const RateEval& rate_eval, const Grouping& initial, std::size_t max_rounds) {
  if (max_rounds == 0) throw std::invalid_argument("greedy_refine: need at least one round");
  RefineResult res;
  res.grouping = initial;
  RVector rates = rate_eval(res.grouping);
  res.evaluations = 1;
  res.min_rate = rates.minCoeff();
  for (std::size_t round = 0; round < max_rounds; ++round) {
    ++res.rounds;
    Eigen::Index bottleneck = 0;
    rates.minCoeff(&bottleneck);  // first minimum: lowest index on ties
    const auto kstar = static_cast<std::size_t>(bottleneck);
    const std::size_t g0 = res.grouping.assignment[kstar];
    if (res.grouping.sizes()[g0] <= 1) break;

    bool improved = false;
    Grouping best_grouping;
    RVector best_rates;
    double best = res.min_rate;
    for (std::size_t g = 0; g < res.grouping.num_groups; ++g) {
      if (g == g0) continue;
      Grouping cand = res.grouping;
      cand.assignment[kstar] = g;
      RVector r = rate_eval(cand);
      ++res.evaluations;
      const double m = r.minCoeff();
      if (m > best) {
        best = m;
        best_grouping = std::move(cand);
        best_rates = std::move(r);
        improved = true;
      }
    }
    if (!improved) break;
    res.grouping = std::move(best_grouping);
    rates = std::move(best_rates);
    res.min_rate = best;
  }
  return res;
}

void for_each_partition(std::size_t num_users, std::size_t num_groups,
                        const std::function<void(const Grouping&)>& fn) {
  if (num_groups == 0 || num_groups > num_users) return;
  Grouping g{num_groups, std::vector<std::size_t>(num_users, 0)};
  // Restricted growth strings: a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (used + (num_users - i) < num_groups) return;
    if (i == num_users) {
      if (used == num_groups) fn(g);
      return;
    }
    const std::size_t limit = std::min(used + 1, num_groups);
    for (std::size_t v = 0; v < limit; ++v) {
      g.assignment[i] = v;
      rec(i + 1, std::max(used, v + 1));
    }
  };
  rec(0, 0);
}

BruteForceResult brute_force_grouping(const RateEval& rate_eval, std::size_t num_users,
                                      std::size_t num_groups) {
  if (num_users > kBruteForceMaxUsers)
    throw std::invalid_argument("brute_force_grouping: too many users for enumeration");
  if (num_groups == 0 || num_groups > num_users)
    throw std::invalid_argument("brute_force_grouping: need 1 <= N <= K");
  BruteForceResult best;
  best.min_rate = -std::numeric_limits<double>::infinity();
  // Group n rides its own stream, so every labeling of a partition is scored.
  std::vector<std::size_t> labels(num_groups);
  for_each_partition(num_users, num_groups, [&](const Grouping& g) {
    ++best.partitions;
    std::iota(labels.begin(), labels.end(), std::size_t{0});
    do {
      Grouping cand{num_groups, g.assignment};
      for (auto& a : cand.assignment) a = labels[a];
      const double m = rate_eval(cand).minCoeff();
      if (m > best.min_rate) {
        best.min_rate = m;
        best.grouping = std::move(cand);
      }
    } while (std::next_permutation(labels.begin(), labels.end()));
  });
  return best;
}

}  // namespace simrs::grouping
