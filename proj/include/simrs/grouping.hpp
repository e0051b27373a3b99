#pragma once

#include <functional>
#include <vector>

#include "simrs/rng.hpp"
#include "simrs/rsma.hpp"
#include "simrs/types.hpp"

namespace simrs::grouping {

enum class FeatureMode { reim, magnitude };

struct UserFeatures {
  RMatrix rows;                       // K x dim, each row l2-normalized
  std::vector<std::size_t> zero_rows;  // users whose channel row is identically zero
};

UserFeatures user_features(const CMatrix& end_to_end, FeatureMode mode = FeatureMode::reim);

struct KMeansOptions {
  std::size_t replicates = 10;
  std::size_t max_iters = 100;
};

struct KMeansResult {
  Grouping grouping;
  double inertia = 0.0;               // within-cluster sum of squares
  std::vector<double> inertia_trace;  // per Lloyd iteration of the winning replicate
};

// Lloyd's algorithm with k-means++ seeding; best replicate by inertia.
// Empty clusters are reseeded so every group ends non-empty.
KMeansResult kmeans(const RMatrix& points, std::size_t num_groups, const KMeansOptions& options,
                    Rng& rng);

Grouping kmeans_partition(const UserFeatures& features, std::size_t num_groups,
                          const KMeansOptions& options, Rng& rng);

using RateEval = std::function<RVector(const Grouping&)>;

struct RefineResult {
  Grouping grouping;
  double min_rate = 0.0;
  std::size_t rounds = 0;
  std::size_t evaluations = 0;
};

// Bottleneck-user reassignment: each round moves the lowest-rate user (lowest
// index on ties) to the other group with the best strictly larger min rate.
// Moves that would empty the user's current group are skipped.
RefineResult greedy_refine(const RateEval& rate_eval, const Grouping& initial, std::size_t max_rounds);

struct BruteForceResult {
  Grouping grouping;
  double min_rate = 0.0;
  std::size_t partitions = 0;
};

inline constexpr std::size_t kBruteForceMaxUsers = 8;

// Exhaustive search over all set partitions of K users into N non-empty groups,
// each scored under every assignment of group labels. `partitions` counts the
// unlabeled partitions.
BruteForceResult brute_force_grouping(const RateEval& rate_eval, std::size_t num_users,
                                      std::size_t num_groups);

// Calls fn once per partition into exactly N non-empty groups (restricted growth strings).
void for_each_partition(std::size_t num_users, std::size_t num_groups,
                        const std::function<void(const Grouping&)>& fn);

}  // namespace simrs::grouping
