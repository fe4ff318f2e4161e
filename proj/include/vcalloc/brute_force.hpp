#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcalloc/model.hpp"
#include "vcalloc/objective.hpp"

namespace vcalloc {

// Reference solver kept deliberately naive: it walks every injective map of
// components onto individual slots, with no symmetry reduction and no
// pruning, and runs the full feasibility check on each complete map. Used to
// cross-check the exact solver; refuses anything beyond small instances.
inline AllocationResult solve_brute_force(const GraphJob& job, const VcTopology& vc,
                                          const SystemParams& params,
                                          CostMode mode = CostMode::PerEdge) {
  const int n = job.size();
  const int total = vc.total_slots();
  if (total > 12 || n > 6)
    throw std::runtime_error("brute force limited to 12 slots and 6 components, got " +
                             std::to_string(total) + " slots / " + std::to_string(n) +
                             " components");

  const auto start = std::chrono::steady_clock::now();

  // Flatten slots: slot s belongs to owner[s] and is that provider's
  // within[s]-th slot. Providers appear in ascending order, so the first
  // complete map found for any provider vector is also slot-sorted.
  std::vector<int> owner, within;
  for (int j = 0; j < vc.sp_count; ++j) {
    for (int s = 0; s < vc.slots[j]; ++s) {
      owner.push_back(j);
      within.push_back(s);
    }
  }

  AllocationResult best;
  std::uint64_t seen = 0;
  if (n == 0 || total < n) return best;

  Assignment x(n);
  std::vector<std::uint8_t> used(owner.size(), 0);
  auto step = [&](auto&& self, int comp) -> void {
    if (comp == n) {
      ++seen;
      if (!is_feasible(job, vc, params, x).feasible()) return;
      const double ct = completion_time(job, vc, params, x);
      const double xc = exchange_cost(job, vc, x, mode);
      const double obj = combine_objective(params.alpha1, ct, params.alpha2, xc);
      if (!best.feasible || obj < best.objective) {
        best.assignment = x;
        best.objective = obj;
        best.completion_time = ct;
        best.exchange_cost = xc;
        best.feasible = true;
      }
      return;
    }
    for (std::size_t s = 0; s < owner.size(); ++s) {
      if (used[s]) continue;
      used[s] = 1;
      x.place(comp, owner[s], within[s]);
      self(self, comp + 1);
      x.clear(comp);
      used[s] = 0;
    }
  };
  step(step, 0);

  best.meta.iterations = seen;
  best.meta.seed = 0;
  best.meta.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return best;
}

}  // namespace vcalloc
