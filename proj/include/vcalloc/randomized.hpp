#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <vector>

#include "vcalloc/model.hpp"
#include "vcalloc/objective.hpp"
#include "vcalloc/rng.hpp"

namespace vcalloc {

// Breadth-first layering of the job graph from a chosen root component.
// layers[0] = {root}, layers[k] = components at hop distance k. Every job
// edge connects components in the same or in adjacent layers, so placing
// layer by layer sees each edge no later than its second endpoint.
struct HierarchicalTree {
  int root = -1;
  std::vector<std::vector<int>> layers;
};

inline HierarchicalTree build_hierarchical_tree(const GraphJob& job, int root) {
  const int n = job.size();
  std::vector<int> dist(n, -1);
  std::vector<int> queue{root};
  dist[root] = 0;
  int max_dist = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    for (int w : job.neighbors(v)) {
      if (w != v && dist[w] < 0) {
        dist[w] = dist[v] + 1;
        if (dist[w] > max_dist) max_dist = dist[w];
        queue.push_back(w);
      }
    }
  }
  HierarchicalTree tree;
  tree.root = root;
  tree.layers.resize(max_dist + 1);
  // Ascending component id inside each layer; placement order is shuffled
  // later, this just pins the pre-shuffle state.
  for (int v = 0; v < n; ++v)
    if (dist[v] >= 0) tree.layers[dist[v]].push_back(v);
  return tree;
}

// Mutable placement bookkeeping for one Monte-Carlo round. `order` and
// `options` are in-round scratch; reset keeps allocated capacity across
// rounds.
struct PlacementState {
  Assignment assignment;
  std::vector<int> count;    // components per provider
  std::vector<int> order;    // layer visit order scratch
  std::vector<int> options;  // admissible providers for one component

  void reset(int n, int m) {
    if (assignment.size() != n) {
      assignment = Assignment(n);
    } else {
      for (int i = 0; i < n; ++i) assignment.clear(i);
    }
    count.assign(m, 0);
  }
};

namespace detail {

// Verdicts of the two exponential threshold checks, precomputed once per
// solve. Every entry comes from the same call the direct check would make,
// so a lookup reproduces the direct verdict bit for bit; the cache only
// lifts repeated exp() work out of the iteration loop.
struct FeasibilityTables {
  int n = 0, m = 0, stride = 0;
  std::vector<std::uint8_t> pair_ok;  // ((a*n + b)*m + j)*m + k, job edges only
  std::vector<std::uint8_t> load_ok;  // j*stride + count, all providers but the owner

  void build(const GraphJob& job, const VcTopology& vc, const SystemParams& params) {
    n = job.size();
    m = vc.sp_count;
    pair_ok.assign(static_cast<std::size_t>(n) * n * m * m, 0);
    for (const JobEdge& e : job.edges()) {
      for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
          // Contact window and rate are symmetric in the provider pair, so
          // one verdict serves the edge in both directions.
          const std::uint8_t ok = edge_contact_ok(vc, params, j, k, e.weight) ? 1 : 0;
          pair_ok[pair_index(e.a, e.b, j, k)] = ok;
          pair_ok[pair_index(e.b, e.a, j, k)] = ok;
        }
      }
    }
    int max_slots = 0;
    for (int j = 0; j < m; ++j) max_slots = std::max(max_slots, vc.slots[j]);
    stride = max_slots + 1;
    load_ok.assign(static_cast<std::size_t>(m) * stride, 0);
    for (int j = 0; j < m; ++j) {
      if (j == vc.jo()) continue;
      for (int c = 0; c <= vc.slots[j]; ++c)
        load_ok[static_cast<std::size_t>(j) * stride + c] =
            provider_load_ok(vc, params, j, c) ? 1 : 0;
    }
  }

  std::size_t pair_index(int a, int b, int j, int k) const {
    return ((static_cast<std::size_t>(a) * n + b) * m + j) * m + k;
  }
  bool edge_ok(int a, int b, int j, int k) const { return pair_ok[pair_index(a, b, j, k)] != 0; }
  bool provider_ok(int j, int count) const {
    return load_ok[static_cast<std::size_t>(j) * stride + count] != 0;
  }
};

// Single placement implementation behind place_layer and the solver loop.
// Components are visited in uniformly shuffled order; each takes a uniform
// draw over the free slots of providers that (i) have room, (ii) keep the
// owner-transfer probability above xi with one more component, and (iii)
// keep contact with every already-placed neighbor above epsilon. Returns
// false as soon as some component has no admissible slot; the round is then
// abandoned (no backtracking inside a round). With `tables` the threshold
// verdicts come from the per-solve cache instead of fresh exp() calls.
inline bool place_components(PlacementState& st, const GraphJob& job, const VcTopology& vc,
                             const SystemParams& params, const int* layer, int layer_size,
                             SplitMix64& rng, const FeasibilityTables* tables) {
  st.order.assign(layer, layer + layer_size);
  shuffle(st.order, rng);
  const int m = vc.sp_count;
  const int jo = vc.jo();
  for (int comp : st.order) {
    // Free slot count when provider j admits comp, 0 otherwise.
    const auto admissible = [&](int j) -> int {
      const int free = vc.slots[j] - st.count[j];
      if (free <= 0) return 0;
      if (j != jo) {
        const bool ok = tables ? tables->provider_ok(j, st.count[j] + 1)
                               : provider_load_ok(vc, params, j, st.count[j] + 1);
        if (!ok) return 0;
      }
      for (int nb : job.neighbors(comp)) {
        if (!st.assignment.placed(nb)) continue;
        const bool ok = tables ? tables->edge_ok(comp, nb, j, st.assignment.sp(nb))
                               : edge_contact_ok(vc, params, j, st.assignment.sp(nb),
                                                 job.weight(comp, nb));
        if (!ok) return 0;
      }
      return free;
    };
    st.options.clear();
    int total_free = 0;
    for (int j = 0; j < m; ++j) {
      const int free = admissible(j);
      if (free > 0) {
        st.options.push_back(j);
        total_free += free;
      }
    }
    if (total_free == 0) return false;
    // The draw happens after the scan, so the admissible set never depends
    // on the picked value.
    int pick = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(total_free)));
    for (int j : st.options) {
      const int free = vc.slots[j] - st.count[j];
      if (pick < free) {
        st.assignment.place(comp, j, st.count[j]);
        ++st.count[j];
        break;
      }
      pick -= free;
    }
  }
  return true;
}

}  // namespace detail

// Places one layer of the tree. See detail::place_components for the rules.
inline bool place_layer(PlacementState& st, const GraphJob& job, const VcTopology& vc,
                        const SystemParams& params, const HierarchicalTree& tree, int layer_index,
                        SplitMix64& rng, const detail::FeasibilityTables* tables = nullptr) {
  const std::vector<int>& layer = tree.layers[layer_index];
  return detail::place_components(st, job, vc, params, layer.data(),
                                  static_cast<int>(layer.size()), rng, tables);
}

namespace detail {

// Reused per-round buffers for the breadth-first layering.
struct TreeScratch {
  std::vector<int> dist;
  std::vector<int> bfs;
  std::vector<std::vector<int>> layers;  // cleared each round, capacity kept
};

// One Monte-Carlo round against preallocated scratch. Mirrors
// build_hierarchical_tree layer for layer (ascending component id before the
// shuffle) without the per-round allocations.
inline bool run_round(const GraphJob& job, const VcTopology& vc, const SystemParams& params,
                      const FeasibilityTables& tables, TreeScratch& ts, PlacementState& st,
                      SplitMix64& rng) {
  const int n = job.size();
  const int root = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n)));
  ts.dist.assign(n, -1);
  ts.bfs.clear();
  ts.bfs.push_back(root);
  ts.dist[root] = 0;
  int depth = 0;
  for (std::size_t head = 0; head < ts.bfs.size(); ++head) {
    const int v = ts.bfs[head];
    for (int w : job.neighbors(v)) {
      if (w != v && ts.dist[w] < 0) {
        ts.dist[w] = ts.dist[v] + 1;
        if (ts.dist[w] > depth) depth = ts.dist[w];
        ts.bfs.push_back(w);
      }
    }
  }
  if (static_cast<int>(ts.layers.size()) < depth + 1) ts.layers.resize(depth + 1);
  for (int d = 0; d <= depth; ++d) ts.layers[d].clear();
  for (int v = 0; v < n; ++v)
    if (ts.dist[v] >= 0) ts.layers[ts.dist[v]].push_back(v);
  st.reset(n, vc.sp_count);
  for (int d = 0; d <= depth; ++d) {
    if (!place_components(st, job, vc, params, ts.layers[d].data(),
                          static_cast<int>(ts.layers[d].size()), rng, &tables))
      return false;
  }
  return true;
}

// Full feasibility re-check of a finished round from the verdict cache.
// Same checks as is_feasible_quick, so the gate below never admits an
// assignment the public checker would reject.
inline bool round_feasible(const GraphJob& job, const VcTopology& vc, const FeasibilityTables& t,
                           const PlacementState& st) {
  if (!st.assignment.complete()) return false;
  for (int j = 0; j < vc.sp_count; ++j) {
    if (st.count[j] > vc.slots[j]) return false;
    if (j != vc.jo() && st.count[j] > 0 && !t.provider_ok(j, st.count[j])) return false;
  }
  for (const JobEdge& e : job.edges())
    if (!t.edge_ok(e.a, e.b, st.assignment.sp(e.a), st.assignment.sp(e.b))) return false;
  return true;
}

}  // namespace detail

// One Monte-Carlo round: random root, breadth-first layering, layer-by-layer
// randomized placement. Returns the assignment when every layer placed.
inline std::optional<Assignment> run_single_iteration(const GraphJob& job, const VcTopology& vc,
                                                      const SystemParams& params, SplitMix64& rng,
                                                      PlacementState& scratch) {
  const int n = job.size();
  if (n == 0 || vc.total_slots() < n) return std::nullopt;
  detail::FeasibilityTables tables;
  tables.build(job, vc, params);
  detail::TreeScratch ts;
  if (!detail::run_round(job, vc, params, tables, ts, scratch, rng)) return std::nullopt;
  return scratch.assignment;
}

inline std::optional<Assignment> run_single_iteration(const GraphJob& job, const VcTopology& vc,
                                                      const SystemParams& params,
                                                      SplitMix64& rng) {
  PlacementState scratch;
  return run_single_iteration(job, vc, params, rng, scratch);
}

// Randomized solver: best of `iterations` independent rounds. Round i draws
// its generator from mix_seed(seed, i), so the first rounds of a long run
// coincide with a short run on the same seed, and the whole result is a pure
// function of (instance, seed, iterations). Ties keep the earliest round.
// When `trace` is non-null it receives the best objective seen after each
// round (infinity until the first feasible one).
inline AllocationResult solve_randomized(const GraphJob& job, const VcTopology& vc,
                                         const SystemParams& params, int iterations,
                                         std::uint64_t seed, CostMode mode = CostMode::PerEdge,
                                         std::vector<double>* trace = nullptr) {
  const auto start = std::chrono::steady_clock::now();
  AllocationResult best;
  best.meta.seed = seed;
  if (trace) {
    trace->clear();
    trace->reserve(static_cast<std::size_t>(iterations > 0 ? iterations : 0));
  }
  const int n = job.size();
  const bool runnable = n > 0 && vc.total_slots() >= n;
  detail::FeasibilityTables tables;
  if (runnable) tables.build(job, vc, params);
  detail::TreeScratch ts;
  PlacementState st;
  for (int it = 0; it < iterations; ++it) {
    SplitMix64 rng(mix_seed(seed, static_cast<std::uint64_t>(it)));
    // The layered checks already enforce every constraint, but rounds stay
    // honest: only assignments passing the full re-check may win.
    if (runnable && detail::run_round(job, vc, params, tables, ts, st, rng) &&
        detail::round_feasible(job, vc, tables, st)) {
      const double ct = completion_time(job, vc, params, st.assignment);
      const double xc = exchange_cost(job, vc, st.assignment, mode);
      const double obj = combine_objective(params.alpha1, ct, params.alpha2, xc);
      if (!best.feasible || obj < best.objective) {
        best.assignment = st.assignment;
        best.objective = obj;
        best.completion_time = ct;
        best.exchange_cost = xc;
        best.feasible = true;
      }
    }
    if (trace) trace->push_back(best.objective);
  }
  best.meta.iterations = static_cast<std::uint64_t>(iterations > 0 ? iterations : 0);
  best.meta.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return best;
}

}  // namespace vcalloc
