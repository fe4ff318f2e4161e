#pragma once

#include <chrono>
#include <utility>
#include <vector>

#include "vcalloc/model.hpp"
#include "vcalloc/objective.hpp"

namespace vcalloc {

// A complete feasible placement together with its evaluated criteria.
struct Candidate {
  Assignment assignment;
  double objective = 0.0;
  double completion_time = 0.0;
  double exchange_cost = 0.0;
};

namespace detail {

// All edges from `comp` into already-placed components must tolerate
// hosting `comp` on provider j.
inline bool placed_edges_ok(const GraphJob& job, const VcTopology& vc, const SystemParams& params,
                            const Assignment& x, int comp, int j) {
  for (int nb : job.neighbors(comp)) {
    if (!x.placed(nb)) continue;
    if (!edge_contact_ok(vc, params, j, x.sp(nb), job.weight(comp, nb))) return false;
  }
  return true;
}

}  // namespace detail

// Depth-first enumeration of every feasible complete placement, one visit per
// distinct component->provider map (slots within a provider are
// interchangeable, so slot permutations are not revisited). Placements are
// produced in lexicographic order of the provider vector. Partial branches
// are cut as soon as capacity, owner-transfer, or pairwise contact fails;
// all three only get worse as placement grows, so no feasible leaf is lost.
template <typename Visitor>
void for_each_candidate(const GraphJob& job, const VcTopology& vc, const SystemParams& params,
                        CostMode mode, Visitor&& visit) {
  const int n = job.size();
  const int m = vc.sp_count;
  if (n == 0 || vc.total_slots() < n) return;

  Assignment x(n);
  std::vector<int> count(m, 0);

  auto step = [&](auto&& self, int comp) -> void {
    if (comp == n) {
      Candidate c;
      c.assignment = x;
      c.completion_time = completion_time(job, vc, params, x);
      c.exchange_cost = exchange_cost(job, vc, x, mode);
      c.objective = combine_objective(params.alpha1, c.completion_time, params.alpha2,
                                      c.exchange_cost);
      visit(c);
      return;
    }
    for (int j = 0; j < m; ++j) {
      if (count[j] >= vc.slots[j]) continue;
      if (j != vc.jo() && !provider_load_ok(vc, params, j, count[j] + 1)) continue;
      if (!detail::placed_edges_ok(job, vc, params, x, comp, j)) continue;
      x.place(comp, j, count[j]);
      ++count[j];
      self(self, comp + 1);
      --count[j];
      x.clear(comp);
    }
  };
  step(step, 0);
}

inline std::vector<Candidate> enumerate_candidates(const GraphJob& job, const VcTopology& vc,
                                                   const SystemParams& params, CostMode mode) {
  std::vector<Candidate> out;
  for_each_candidate(job, vc, params, mode, [&out](const Candidate& c) { out.push_back(c); });
  return out;
}

// Exact solver: scans the full candidate set and keeps the minimum objective.
// Ties go to the lexicographically smallest provider vector, which is the
// first one the enumeration meets, so the answer never depends on timing.
inline AllocationResult solve_optimal(const GraphJob& job, const VcTopology& vc,
                                      const SystemParams& params,
                                      CostMode mode = CostMode::PerEdge) {
  const auto start = std::chrono::steady_clock::now();
  AllocationResult best;
  std::uint64_t seen = 0;
  for_each_candidate(job, vc, params, mode, [&](const Candidate& c) {
    ++seen;
    if (!best.feasible || c.objective < best.objective) {
      best.assignment = c.assignment;
      best.objective = c.objective;
      best.completion_time = c.completion_time;
      best.exchange_cost = c.exchange_cost;
      best.feasible = true;
    }
  });
  best.meta.iterations = seen;
  best.meta.seed = 0;
  best.meta.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return best;
}

}  // namespace vcalloc
