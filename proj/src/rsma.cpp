#include "simrs/rsma.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace simrs {

PowerAllocation::PowerAllocation(RVector powers, std::size_t groups, std::size_t users)
    : p(std::move(powers)), num_groups(groups), num_users(users) {
  if (static_cast<std::size_t>(p.size()) != 1 + groups + users)
    throw std::invalid_argument("PowerAllocation: length must be 1 + N + K");
  if ((p.array() < 0.0).any()) throw std::invalid_argument("PowerAllocation: negative power");
}

std::vector<std::size_t> Grouping::sizes() const {
  std::vector<std::size_t> out(num_groups, 0);
  for (std::size_t g : assignment)
    if (g < num_groups) ++out[g];
  return out;
}

std::vector<std::size_t> Grouping::members(std::size_t group) const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < assignment.size(); ++k)
    if (assignment[k] == group) out.push_back(k);
  return out;
}

void validate_partition(const Grouping& grouping, std::size_t num_users, bool require_nonempty) {
  if (grouping.num_groups == 0) {
    if (!grouping.assignment.empty())
      throw std::invalid_argument("partition: assignment given with zero groups");
    return;
  }
  if (grouping.assignment.size() != num_users)
    throw std::invalid_argument("partition: every user must be assigned");
  for (std::size_t k = 0; k < num_users; ++k)
    if (grouping.assignment[k] >= grouping.num_groups)
      throw std::invalid_argument("partition: user " + std::to_string(k) + " is in no group");
  if (require_nonempty)
    for (std::size_t s : grouping.sizes())
      if (s == 0) throw std::invalid_argument("partition: empty group");
}

Grouping canonical(const Grouping& grouping) {
  Grouping out{grouping.num_groups, grouping.assignment};
  std::vector<std::size_t> relabel(grouping.num_groups, grouping.num_groups);
  std::size_t next = 0;
  for (auto& g : out.assignment) {
    if (relabel[g] == grouping.num_groups) relabel[g] = next++;
    g = relabel[g];
  }
  return out;
}

std::string format_partition(const Grouping& grouping) {
  std::ostringstream os;
  for (std::size_t k = 0; k < grouping.assignment.size(); ++k) {
    if (k) os << ',';
    os << grouping.assignment[k];
  }
  return os.str();
}

Grouping parse_partition(const std::string& text, std::size_t num_groups) {
  Grouping g{num_groups, {}};
  std::istringstream is(text);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    std::size_t pos = 0;
    const unsigned long v = std::stoul(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("partition: bad token '" + tok + "'");
    if (v >= num_groups) throw std::invalid_argument("partition: group index out of range");
    g.assignment.push_back(v);
  }
  return g;
}

namespace {

void check_gains(const RMatrix& gains, const PowerAllocation& p) {
  if (static_cast<std::size_t>(gains.cols()) != p.size() ||
      static_cast<std::size_t>(gains.rows()) != p.num_users)
    throw std::invalid_argument("rsma: gains must be K x (1 + N + K)");
}

double group_interference(const RMatrix& gains, const PowerAllocation& p, Eigen::Index k,
                          std::size_t skip_group) {
  double acc = 0.0;
  for (std::size_t n = 0; n < p.num_groups; ++n)
    if (n != skip_group) acc += p.group(n) * gains(k, static_cast<Eigen::Index>(1 + n));
  return acc;
}

double private_interference(const RMatrix& gains, const PowerAllocation& p, Eigen::Index k,
                            std::size_t skip_user) {
  double acc = 0.0;
  const std::size_t base = 1 + p.num_groups;
  for (std::size_t j = 0; j < p.num_users; ++j)
    if (j != skip_user) acc += p.priv(j) * gains(k, static_cast<Eigen::Index>(base + j));
  return acc;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

RVector sinr_common(const RMatrix& gains, const PowerAllocation& p, double noise) {
  check_gains(gains, p);
  RVector out(gains.rows());
  for (Eigen::Index k = 0; k < gains.rows(); ++k) {
    const double denom =
        group_interference(gains, p, k, kNone) + private_interference(gains, p, k, kNone) + noise;
    out(k) = p.common() * gains(k, 0) / denom;
  }
  return out;
}

RVector sinr_group(const RMatrix& gains, const PowerAllocation& p, const Grouping& grouping,
                   double noise) {
  check_gains(gains, p);
  if (grouping.num_groups != p.num_groups)
    throw std::invalid_argument("sinr_group: grouping and power vector disagree on N");
  RVector out = RVector::Zero(gains.rows());
  if (p.num_groups == 0) return out;
  validate_partition(grouping, p.num_users);
  for (Eigen::Index k = 0; k < gains.rows(); ++k) {
    const std::size_t n = grouping.assignment[static_cast<std::size_t>(k)];
    const double denom =
        group_interference(gains, p, k, n) + private_interference(gains, p, k, kNone) + noise;
    out(k) = p.group(n) * gains(k, static_cast<Eigen::Index>(1 + n)) / denom;
  }
  return out;
}

RVector sinr_private(const RMatrix& gains, const PowerAllocation& p, double noise) {
  check_gains(gains, p);
  RVector out(gains.rows());
  const std::size_t base = 1 + p.num_groups;
  for (Eigen::Index k = 0; k < gains.rows(); ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const double denom = private_interference(gains, p, k, uk) + noise;
    out(k) = p.priv(uk) * gains(k, static_cast<Eigen::Index>(base + uk)) / denom;
  }
  return out;
}

StreamRates stream_rates(const RVector& sinr_c, const RVector& sinr_g, const RVector& sinr_p,
                         const Grouping& grouping) {
  StreamRates r;
  r.common = sinr_c.size() ? std::log2(1.0 + sinr_c.minCoeff()) : 0.0;
  r.priv = (1.0 + sinr_p.array()).log() / std::log(2.0);
  r.group = RVector::Zero(static_cast<Eigen::Index>(grouping.num_groups));
  for (std::size_t n = 0; n < grouping.num_groups; ++n) {
    const auto members = grouping.members(n);
    if (members.empty()) {
      r.empty_groups.push_back(n);
      continue;
    }
    double worst = sinr_g(static_cast<Eigen::Index>(members.front()));
    for (std::size_t k : members) worst = std::min(worst, sinr_g(static_cast<Eigen::Index>(k)));
    r.group(static_cast<Eigen::Index>(n)) = std::log2(1.0 + worst);
  }
  return r;
}

RVector user_rates(const StreamRates& rates, const Grouping& grouping, std::size_t num_users) {
  RVector out(static_cast<Eigen::Index>(num_users));
  const auto sizes = grouping.sizes();
  const double common_share = rates.common / static_cast<double>(num_users);
  for (std::size_t k = 0; k < num_users; ++k) {
    double r = common_share + rates.priv(static_cast<Eigen::Index>(k));
    if (grouping.num_groups > 0) {
      const std::size_t n = grouping.assignment[k];
      r += rates.group(static_cast<Eigen::Index>(n)) / static_cast<double>(sizes[n]);
    }
    out(static_cast<Eigen::Index>(k)) = r;
  }
  return out;
}

RateReport evaluate_rates(const RMatrix& gains, const PowerAllocation& p, const Grouping& grouping,
                          double noise) {
  RateReport r;
  r.sinr_common = sinr_common(gains, p, noise);
  r.sinr_group = sinr_group(gains, p, grouping, noise);
  r.sinr_private = sinr_private(gains, p, noise);
  r.streams = stream_rates(r.sinr_common, r.sinr_group, r.sinr_private, grouping);
  r.user_rates = user_rates(r.streams, grouping, p.num_users);
  r.min_rate = r.user_rates.minCoeff();
  return r;
}

RateReport evaluate_rates(const CMatrix& end_to_end, const PowerAllocation& p,
                          const Grouping& grouping, double noise) {
  return evaluate_rates(RMatrix(end_to_end.cwiseAbs2()), p, grouping, noise);
}

}  // namespace simrs
