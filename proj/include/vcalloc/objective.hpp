#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vcalloc/model.hpp"

namespace vcalloc {

// Probability that an exponentially distributed contact of the given rate
// lasts at least `duration`: exp(-duration * rate).
inline double contact_probability(double duration, double rate) {
  if (duration < 0.0) throw std::domain_error("contact_probability: negative duration");
  if (!(rate > 0.0)) throw std::domain_error("contact_probability: rate must be positive");
  return std::exp(-duration * rate);
}

// Job completion time: the owner streams components to each provider in
// sequence, all providers receive in parallel, execution starts once the
// slowest provider has everything. The owner hosts its own components at
// zero transfer time, so it never contributes to the maximum.
inline double completion_time(const GraphJob& job, const VcTopology& vc, const SystemParams& params,
                              const Assignment& x) {
  require_complete(job, vc, x);
  const std::vector<int> counts = x.per_sp_counts(vc.sp_count);
  double longest = 0.0;
  for (int j = 0; j < vc.sp_count; ++j) {
    if (j == vc.jo()) continue;
    const double arrival = counts[j] * vc.trans_time[j];
    if (arrival > longest) longest = arrival;
  }
  return longest + params.exec_time;
}

// Total data exchange cost of a complete placement under the given mode.
inline double exchange_cost(const GraphJob& job, const VcTopology& vc, const Assignment& x,
                            CostMode mode) {
  require_complete(job, vc, x);
  if (mode == CostMode::PerEdge) {
    double total = 0.0;
    for (const JobEdge& e : job.edges()) {
      const int j = x.sp(e.a);
      const int k = x.sp(e.b);
      if (j != k) total += vc.cost_at(j, k);
    }
    return total;
  }
  const std::vector<std::uint8_t> y = exchange_indicator(job, vc, x);
  const int m = vc.sp_count;
  double total = 0.0;
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k)
      if (y[static_cast<std::size_t>(j) * m + k]) total += vc.cost_at(j, k);
  return total;
}

// Shared by every code path that folds the two criteria into one scalar, so
// recomputation reproduces stored objectives bit for bit.
inline double combine_objective(double alpha1, double completion, double alpha2, double cost) {
  return alpha1 * completion + alpha2 * cost;
}

inline double objective_value(const GraphJob& job, const VcTopology& vc, const SystemParams& params,
                              const Assignment& x, CostMode mode) {
  return combine_objective(params.alpha1, completion_time(job, vc, params, x), params.alpha2,
                           exchange_cost(job, vc, x, mode));
}

// --- constraints -------------------------------------------------------------

enum class ConstraintKind { Capacity, PairwiseContact, Transmission, Completeness };

// One failed check. `margin` is how far below the threshold the probability
// fell (negative); -1 marks a missing link, where no probability exists.
struct ConstraintViolation {
  ConstraintKind kind = ConstraintKind::Capacity;
  int i = -1;  // component or provider, depending on kind
  int j = -1;  // second index where the check is pairwise
  double margin = 0.0;
};

// True when two connected components may sit on providers j and k: the
// providers are one hop apart and their contact is expected to outlast the
// exchange window |t_j - t_k| + omega with probability at least epsilon.
inline bool edge_contact_ok(const VcTopology& vc, const SystemParams& params, int j, int k,
                            double omega) {
  if (j == k) return true;
  if (!vc.linked(j, k)) return false;
  const double window = std::abs(vc.trans_time[j] - vc.trans_time[k]) + omega;
  return contact_probability(window, vc.rate_at(j, k)) >= params.epsilon;
}

// True when provider j (not the owner) can hold `count` components: the
// owner's contact with j must outlast the whole transfer of count components.
inline bool provider_load_ok(const VcTopology& vc, const SystemParams& params, int j, int count) {
  const double transfer = count * vc.trans_time[j];
  return contact_probability(transfer, vc.rate_at(j, vc.jo())) >= params.xi;
}

// Capacity check. Works on partial assignments: only placed components count.
inline std::vector<ConstraintViolation> check_capacity(const VcTopology& vc, const Assignment& x) {
  std::vector<ConstraintViolation> out;
  const std::vector<int> counts = x.per_sp_counts(vc.sp_count);
  for (int j = 0; j < vc.sp_count; ++j) {
    if (counts[j] > vc.slots[j])
      out.push_back({ConstraintKind::Capacity, j, -1,
                     static_cast<double>(vc.slots[j] - counts[j])});
  }
  return out;
}

// Contact check for every job edge whose two endpoints are placed on
// different providers. Unplaced endpoints are skipped (completeness is its
// own check).
inline std::vector<ConstraintViolation> check_pairwise_contact(const GraphJob& job,
                                                               const VcTopology& vc,
                                                               const SystemParams& params,
                                                               const Assignment& x) {
  std::vector<ConstraintViolation> out;
  for (const JobEdge& e : job.edges()) {
    if (!x.placed(e.a) || !x.placed(e.b)) continue;
    const int j = x.sp(e.a);
    const int k = x.sp(e.b);
    if (j == k) continue;
    if (!vc.linked(j, k)) {
      out.push_back({ConstraintKind::PairwiseContact, e.a, e.b, -1.0});
      continue;
    }
    const double window = std::abs(vc.trans_time[j] - vc.trans_time[k]) + e.weight;
    const double p = contact_probability(window, vc.rate_at(j, k));
    if (p < params.epsilon)
      out.push_back({ConstraintKind::PairwiseContact, e.a, e.b, p - params.epsilon});
  }
  return out;
}

// Owner-transfer check for every provider currently hosting components.
// The owner itself is exempt: its components never travel.
inline std::vector<ConstraintViolation> check_transmission(const VcTopology& vc,
                                                           const SystemParams& params,
                                                           const Assignment& x) {
  std::vector<ConstraintViolation> out;
  const std::vector<int> counts = x.per_sp_counts(vc.sp_count);
  for (int j = 0; j < vc.sp_count; ++j) {
    if (j == vc.jo() || counts[j] == 0) continue;
    const double p = contact_probability(counts[j] * vc.trans_time[j], vc.rate_at(j, vc.jo()));
    if (p < params.xi) out.push_back({ConstraintKind::Transmission, j, -1, p - params.xi});
  }
  return out;
}

inline std::vector<ConstraintViolation> check_completeness(const GraphJob& job, const Assignment& x) {
  std::vector<ConstraintViolation> out;
  if (x.size() != job.size()) {
    out.push_back({ConstraintKind::Completeness, -1, -1, 0.0});
    return out;
  }
  for (int i = 0; i < job.size(); ++i)
    if (!x.placed(i)) out.push_back({ConstraintKind::Completeness, i, -1, 0.0});
  return out;
}

struct FeasibilityReport {
  bool capacity_ok = false;
  bool pairwise_contact_ok = false;
  bool transmission_ok = false;
  bool completeness_ok = false;
  std::vector<ConstraintViolation> violations;

  bool feasible() const {
    return capacity_ok && pairwise_contact_ok && transmission_ok && completeness_ok;
  }
};

inline FeasibilityReport is_feasible(const GraphJob& job, const VcTopology& vc,
                                     const SystemParams& params, const Assignment& x) {
  FeasibilityReport report;
  auto absorb = [&report](std::vector<ConstraintViolation> v, bool& flag) {
    flag = v.empty();
    report.violations.insert(report.violations.end(), v.begin(), v.end());
  };
  absorb(check_capacity(vc, x), report.capacity_ok);
  absorb(check_pairwise_contact(job, vc, params, x), report.pairwise_contact_ok);
  absorb(check_transmission(vc, params, x), report.transmission_ok);
  absorb(check_completeness(job, x), report.completeness_ok);
  return report;
}

// Allocation-free variant for solver hot loops. Same verdict as
// is_feasible(...).feasible() on complete assignments.
inline bool is_feasible_quick(const GraphJob& job, const VcTopology& vc, const SystemParams& params,
                              const Assignment& x) {
  if (x.size() != job.size() || !x.complete()) return false;
  const std::vector<int> counts = x.per_sp_counts(vc.sp_count);
  for (int j = 0; j < vc.sp_count; ++j) {
    if (counts[j] > vc.slots[j]) return false;
    if (j != vc.jo() && counts[j] > 0 && !provider_load_ok(vc, params, j, counts[j])) return false;
  }
  for (const JobEdge& e : job.edges()) {
    if (!edge_contact_ok(vc, params, x.sp(e.a), x.sp(e.b), e.weight)) return false;
  }
  return true;
}

}  // namespace vcalloc
