#pragma once

// Shared fixtures and independent oracles for the test suite. Oracles here
// deliberately re-derive results through a different code path than the
// library (plain scans, series expansions), so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "vcalloc/vcalloc.hpp"

namespace testsupport {

// Five-component job on a five-provider cloud. All rates, times, costs and
// exchange durations are multiples of 1/32, so sums of a handful of them are
// exact in double arithmetic and expected costs can be asserted exactly.
//
// Job: hub component 4 joined to 0,1,2,3, plus chords (0,2) and (1,3).
// Providers: 0..3 computing, 4 is the owner; fully linked.
inline vcalloc::Instance showcase_instance() {
  vcalloc::Instance inst;
  inst.job = vcalloc::GraphJob(5);
  inst.job.add_edge(0, 2, 0.125);
  inst.job.add_edge(0, 4, 0.15625);
  inst.job.add_edge(1, 4, 0.1875);
  inst.job.add_edge(2, 4, 0.21875);
  inst.job.add_edge(3, 4, 0.25);
  inst.job.add_edge(1, 3, 0.28125);

  inst.vc = vcalloc::VcTopology(5);
  inst.vc.slots = {5, 2, 2, 2, 3};
  inst.vc.trans_time = {0.25, 0.3125, 0.375, 0.4375, 0.0};
  const double lam = 0.03125;
  inst.vc.set_link(0, 1, lam, 0.40625);
  inst.vc.set_link(0, 2, lam, 0.3125);
  inst.vc.set_link(0, 3, lam, 0.46875);
  inst.vc.set_link(0, 4, lam, 0.28125);
  inst.vc.set_link(1, 2, lam, 0.5);
  inst.vc.set_link(1, 3, lam, 0.34375);
  inst.vc.set_link(1, 4, lam, 0.375);
  inst.vc.set_link(2, 3, lam, 0.21875);
  inst.vc.set_link(2, 4, lam, 0.25);
  inst.vc.set_link(3, 4, lam, 0.4375);

  inst.params.epsilon = 0.5;
  inst.params.xi = 0.5;
  inst.params.alpha1 = 0.5;
  inst.params.alpha2 = 0.5;
  inst.params.exec_time = 1.0;
  return inst;
}

// Named placements on the showcase instance with their exact expected
// exchange costs (sums of /32 values, exact in double).
struct ShowcaseCandidate {
  const char* name;
  std::vector<int> sp;       // provider per component
  double cost_per_edge;
  double cost_per_pair;
};

inline std::vector<ShowcaseCandidate> showcase_candidates() {
  return {
      {"all_on_sp0", {0, 0, 0, 0, 0}, 0.0, 0.0},
      // component 0 moves out: edges (0,2) and (0,4) both cross pair (0,2)
      {"one_split_off", {2, 0, 0, 0, 0}, 0.625, 0.3125},
      // hub on the owner, components spread over three providers
      {"hub_on_owner", {2, 1, 2, 3, 4}, 1.65625, 1.40625},
      {"fully_spread", {0, 1, 2, 3, 4}, 2.0, 2.0},
  };
}

// Triangle job on a three-provider cloud (owner included), thresholds loose.
// Exchange cost between the computing providers is 0.5; owner links free.
inline vcalloc::Instance triangle_instance() {
  vcalloc::Instance inst;
  inst.job = vcalloc::GraphJob(3);
  inst.job.add_edge(0, 1, 0.125);
  inst.job.add_edge(1, 2, 0.125);
  inst.job.add_edge(0, 2, 0.125);

  inst.vc = vcalloc::VcTopology(3);
  inst.vc.slots = {2, 2, 1};
  inst.vc.trans_time = {0.2, 0.3, 0.0};
  inst.vc.set_link(0, 1, 0.01, 0.5);
  inst.vc.set_link(0, 2, 0.01, 0.0);
  inst.vc.set_link(1, 2, 0.01, 0.0);

  inst.params.epsilon = 0.5;
  inst.params.xi = 0.5;
  inst.params.alpha1 = 0.5;
  inst.params.alpha2 = 0.5;
  inst.params.exec_time = 1.0;
  return inst;
}

inline vcalloc::Assignment make_assignment(const std::vector<int>& sp_per_comp) {
  vcalloc::Assignment x(static_cast<int>(sp_per_comp.size()));
  std::vector<int> counts(64, 0);
  for (std::size_t i = 0; i < sp_per_comp.size(); ++i) {
    const int j = sp_per_comp[i];
    x.place(static_cast<int>(i), j, counts[j]++);
  }
  return x;
}

// Independent exponential: truncated Taylor series in long double. Good to
// well below 1e-16 relative for |x| <= 8.
inline double exp_series(double x) {
  long double sum = 1.0L, term = 1.0L;
  const long double lx = static_cast<long double>(x);
  for (int k = 1; k < 64; ++k) {
    term *= lx / k;
    sum += term;
    if (term < 1e-25L && term > -1e-25L) break;
  }
  return static_cast<double>(sum);
}

// Exhaustive oracle over all m^n component->provider maps: returns the sorted
// set of feasible provider vectors. Independent of the solver's search order
// and pruning; feasibility comes from the public report-style check.
inline std::vector<std::vector<int>> oracle_feasible_maps(const vcalloc::GraphJob& job,
                                                          const vcalloc::VcTopology& vc,
                                                          const vcalloc::SystemParams& params) {
  const int n = job.size();
  const int m = vc.sp_count;
  std::vector<std::vector<int>> out;
  std::vector<int> map(n, 0);
  for (;;) {
    out.push_back(map);
    int i = n - 1;
    while (i >= 0 && map[i] == m - 1) map[i--] = 0;
    if (i < 0) break;
    ++map[i];
  }
  std::vector<std::vector<int>> feasible;
  for (const std::vector<int>& candidate : out) {
    const vcalloc::Assignment x = make_assignment(candidate);
    if (vcalloc::is_feasible(job, vc, params, x).feasible()) feasible.push_back(candidate);
  }
  std::sort(feasible.begin(), feasible.end());
  return feasible;
}

// Random connected job: spanning tree plus extra chords.
inline vcalloc::GraphJob random_connected_job(int n, double extra_edge_prob,
                                              vcalloc::Interval weight, vcalloc::SplitMix64& rng) {
  vcalloc::GraphJob job(n);
  for (int v = 1; v < n; ++v) {
    const int parent = vcalloc::uniform_int(0, v - 1, rng);
    job.add_edge(parent, v, vcalloc::uniform_in(weight.lo, weight.hi, rng));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!job.has_edge(a, b) && rng.next_double() < extra_edge_prob)
        job.add_edge(a, b, vcalloc::uniform_in(weight.lo, weight.hi, rng));
  return job;
}

// Small random instance within the brute-force guard rail (<= 10 slots,
// <= 5 components). Thresholds vary so a share of instances is infeasible.
inline vcalloc::Instance random_small_instance(vcalloc::SplitMix64& rng) {
  vcalloc::Instance inst;
  const int n = vcalloc::uniform_int(1, 5, rng);
  inst.job = random_connected_job(n, 0.4, {0.1, 0.4}, rng);

  vcalloc::ScenarioConfig cfg;
  cfg.sp_count_min = 2;
  cfg.sp_count_max = 5;
  cfg.slots_min = 0;
  cfg.slots_max = 2;
  cfg.link_probability = 0.7;
  cfg.epsilon = vcalloc::uniform_in(0.5, 0.995, rng);
  cfg.xi = vcalloc::uniform_in(0.5, 0.995, rng);
  cfg.alpha1 = vcalloc::uniform_in(0.0, 1.0, rng);
  // Rates well above the benchmark range so the thresholds actually bite.
  cfg.contact_rate = {0.05, 2.0};
  auto [vc, params] = vcalloc::random_vc(cfg, rng);
  inst.vc = std::move(vc);
  inst.params = params;
  inst.params.alpha2 = 1.0 - inst.params.alpha1;
  return inst;
}

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty()) lines.push_back(current);
  return lines;
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  fields.push_back(current);
  return fields;
}

}  // namespace testsupport
