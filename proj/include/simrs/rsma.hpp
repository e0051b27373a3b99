#pragma once

#include <string>
#include <vector>

#include "simrs/types.hpp"

// Hierarchical rate-splitting rate evaluation for precoding-free streams.
//
// Stream i of the end-to-end channel is radiated by feed antenna i:
//   i = 0            common stream
//   i = 1..N         group-common stream of group n = i
//   i = 1+N..N+K     private stream of user k = i - 1 - N
// Users decode common -> own group -> private with perfect SIC.
namespace simrs {

// Stream powers in watts, ordered [p_c, p_g(1..N), p_p(1..K)].
struct PowerAllocation {
  RVector p;
  std::size_t num_groups = 0;
  std::size_t num_users = 0;

  PowerAllocation() = default;
  PowerAllocation(RVector powers, std::size_t groups, std::size_t users);

  double common() const { return p(0); }
  double group(std::size_t n) const { return p(static_cast<Eigen::Index>(1 + n)); }
  double priv(std::size_t k) const { return p(static_cast<Eigen::Index>(1 + num_groups + k)); }
  double total() const { return p.sum(); }
  std::size_t size() const { return static_cast<std::size_t>(p.size()); }
};

// assignment[k] is the 0-based group of user k. With zero groups the
// assignment is empty and no group streams exist.
struct Grouping {
  std::size_t num_groups = 0;
  std::vector<std::size_t> assignment;

  std::vector<std::size_t> sizes() const;
  std::vector<std::size_t> members(std::size_t group) const;
  bool operator==(const Grouping&) const = default;
};

// Throws unless every user is in exactly one of `num_groups` groups.
// Empty groups are allowed here; `require_nonempty` rejects them.
void validate_partition(const Grouping& grouping, std::size_t num_users,
                        bool require_nonempty = false);

// Canonical relabeling: groups renumbered in order of first appearance.
Grouping canonical(const Grouping& grouping);

std::string format_partition(const Grouping& grouping);
Grouping parse_partition(const std::string& text, std::size_t num_groups);

struct StreamRates {
  double common = 0.0;
  RVector group;    // per group
  RVector priv;     // per user
  std::vector<std::size_t> empty_groups;
};

struct RateReport {
  RVector sinr_common;   // per user
  RVector sinr_group;    // per user, SINR of the user's own group stream (0 when N = 0)
  RVector sinr_private;  // per user
  StreamRates streams;
  RVector user_rates;
  double min_rate = 0.0;
};

// `gains(k, i)` = |h_k v_i|^2.
RVector sinr_common(const RMatrix& gains, const PowerAllocation& p, double noise);
RVector sinr_group(const RMatrix& gains, const PowerAllocation& p, const Grouping& grouping,
                   double noise);
RVector sinr_private(const RMatrix& gains, const PowerAllocation& p, double noise);

StreamRates stream_rates(const RVector& sinr_common, const RVector& sinr_group,
                         const RVector& sinr_private, const Grouping& grouping);

RVector user_rates(const StreamRates& rates, const Grouping& grouping, std::size_t num_users);

RateReport evaluate_rates(const RMatrix& gains, const PowerAllocation& p, const Grouping& grouping,
                          double noise);
RateReport evaluate_rates(const CMatrix& end_to_end, const PowerAllocation& p,
                          const Grouping& grouping, double noise);

}  // namespace simrs
