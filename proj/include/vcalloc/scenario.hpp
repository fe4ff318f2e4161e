#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vcalloc/model.hpp"
#include "vcalloc/rng.hpp"

namespace vcalloc {

// The five benchmark job shapes, by growing structural difficulty:
//   1 triangle (n=3)            2 ring of 4 (n=4)
//   3 bull: triangle plus two horns (n=5)
//   4 double star: two adjacent hubs with three leaves each (n=8)
//   5 tadpole: triangle with a five-edge tail (n=8)
// Edge weights start at 0; draw them with with_random_weights.
inline GraphJob job_topology(int type) {
  switch (type) {
    case 1: {
      GraphJob job(3, 1);
      job.add_edge(0, 1, 0.0);
      job.add_edge(1, 2, 0.0);
      job.add_edge(0, 2, 0.0);
      return job;
    }
    case 2: {
      GraphJob job(4, 2);
      job.add_edge(0, 1, 0.0);
      job.add_edge(1, 2, 0.0);
      job.add_edge(2, 3, 0.0);
      job.add_edge(3, 0, 0.0);
      return job;
    }
    case 3: {
      GraphJob job(5, 3);
      job.add_edge(0, 1, 0.0);
      job.add_edge(1, 2, 0.0);
      job.add_edge(0, 2, 0.0);
      job.add_edge(0, 3, 0.0);
      job.add_edge(1, 4, 0.0);
      return job;
    }
    case 4: {
      GraphJob job(8, 4);
      job.add_edge(0, 1, 0.0);
      job.add_edge(0, 2, 0.0);
      job.add_edge(0, 3, 0.0);
      job.add_edge(0, 4, 0.0);
      job.add_edge(1, 5, 0.0);
      job.add_edge(1, 6, 0.0);
      job.add_edge(1, 7, 0.0);
      return job;
    }
    case 5: {
      GraphJob job(8, 5);
      job.add_edge(0, 1, 0.0);
      job.add_edge(1, 2, 0.0);
      job.add_edge(0, 2, 0.0);
      job.add_edge(2, 3, 0.0);
      job.add_edge(3, 4, 0.0);
      job.add_edge(4, 5, 0.0);
      job.add_edge(5, 6, 0.0);
      job.add_edge(6, 7, 0.0);
      return job;
    }
    default:
      throw std::invalid_argument("job_topology: type must be 1..5, got " + std::to_string(type));
  }
}

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Ranges for random instances. Defaults reproduce the benchmark setup:
// transfer times and exchange costs in [0.2,0.6], exchange durations in
// [0.1,0.4], contact rates in [0.01,0.06], thresholds at 0.9. All draws are
// uniform over their interval.
struct ScenarioConfig {
  int sp_count_min = 4;  // providers including the owner
  int sp_count_max = 8;
  int slots_min = 3;  // idle slots per provider
  int slots_max = 6;
  double link_probability = 0.6;  // provider-to-provider one-hop probability
  Interval trans_time{0.2, 0.6};
  Interval exchange_cost{0.2, 0.6};
  Interval edge_weight{0.1, 0.4};
  Interval contact_rate{0.01, 0.06};
  double epsilon = 0.9;
  double xi = 0.9;
  double alpha1 = 0.5;
  double exec_time = 1.0;
  std::uint64_t seed = 0;
};

inline std::vector<std::string> validate_config(const ScenarioConfig& cfg) {
  std::vector<std::string> errors;
  auto check_interval = [&errors](const Interval& iv, const char* name, bool positive) {
    if (iv.lo > iv.hi) errors.push_back(std::string(name) + ": lower bound above upper bound");
    if (iv.lo < 0.0 || (positive && !(iv.lo > 0.0)))
      errors.push_back(std::string(name) + ": bounds must be " + (positive ? "positive" : "non-negative"));
  };
  if (cfg.sp_count_min < 1 || cfg.sp_count_min > cfg.sp_count_max)
    errors.push_back("provider count range is empty or below 1");
  if (cfg.slots_min < 0 || cfg.slots_min > cfg.slots_max)
    errors.push_back("slot range is empty or negative");
  if (cfg.link_probability < 0.0 || cfg.link_probability > 1.0)
    errors.push_back("link probability must lie in [0,1]");
  check_interval(cfg.trans_time, "trans_time", false);
  check_interval(cfg.exchange_cost, "exchange_cost", false);
  check_interval(cfg.edge_weight, "edge_weight", false);
  check_interval(cfg.contact_rate, "contact_rate", true);
  if (!(cfg.epsilon > 0.0) || cfg.epsilon > 1.0) errors.push_back("epsilon must lie in (0,1]");
  if (!(cfg.xi > 0.0) || cfg.xi > 1.0) errors.push_back("xi must lie in (0,1]");
  if (cfg.alpha1 < 0.0 || cfg.alpha1 > 1.0) errors.push_back("alpha1 must lie in [0,1]");
  if (cfg.exec_time < 0.0) errors.push_back("exec_time must be non-negative");
  return errors;
}

// Copy of `job` with every edge weight redrawn uniformly from `range`,
// one draw per edge in stored edge order.
inline GraphJob with_random_weights(const GraphJob& job, Interval range, SplitMix64& rng) {
  GraphJob out(job.size(), job.type_tag());
  for (const JobEdge& e : job.edges()) out.add_edge(e.a, e.b, uniform_in(range.lo, range.hi, rng));
  return out;
}

// Random vehicular cloud plus matching parameters. Draw order is fixed
// (provider count, slots, transfer times, owner links, then provider pairs
// in lexicographic order), so one seed always yields the same instance.
// Owner links always exist; other pairs appear with link_probability.
inline std::pair<VcTopology, SystemParams> random_vc(const ScenarioConfig& cfg, SplitMix64& rng) {
  const int m = uniform_int(cfg.sp_count_min, cfg.sp_count_max, rng);
  VcTopology vc(m);
  for (int j = 0; j < m; ++j) vc.slots[j] = uniform_int(cfg.slots_min, cfg.slots_max, rng);
  for (int j = 0; j + 1 < m; ++j)
    vc.trans_time[j] = uniform_in(cfg.trans_time.lo, cfg.trans_time.hi, rng);
  for (int j = 0; j + 1 < m; ++j) {
    const double rate = uniform_in(cfg.contact_rate.lo, cfg.contact_rate.hi, rng);
    const double cost = uniform_in(cfg.exchange_cost.lo, cfg.exchange_cost.hi, rng);
    vc.set_link(j, vc.jo(), rate, cost);
  }
  for (int j = 0; j + 1 < m; ++j) {
    for (int k = j + 1; k + 1 < m; ++k) {
      const bool present = rng.next_double() < cfg.link_probability;
      // Rate and cost are drawn either way so the link decision does not
      // shift later draws; absent pairs simply discard theirs.
      const double rate = uniform_in(cfg.contact_rate.lo, cfg.contact_rate.hi, rng);
      const double cost = uniform_in(cfg.exchange_cost.lo, cfg.exchange_cost.hi, rng);
      if (present) vc.set_link(j, k, rate, cost);
    }
  }
  SystemParams params;
  params.epsilon = cfg.epsilon;
  params.xi = cfg.xi;
  params.alpha1 = cfg.alpha1;
  params.alpha2 = 1.0 - cfg.alpha1;
  params.exec_time = cfg.exec_time;
  return {std::move(vc), params};
}

// Benchmark grid axes. Every (type, provider count, average slots, trial)
// combination is one instance; the alpha axis re-weights the same instance.
struct GridSpec {
  std::vector<int> types{1, 2, 3, 4, 5};
  std::vector<int> sp_counts{4, 5, 6, 7, 8};
  std::vector<int> avg_slots{3, 4, 5, 6};
  std::vector<double> alphas{0.5};
  int trials = 1;
};

struct GridCell {
  int index = 0;  // ordinal over the full grid, alpha axis included
  int type = 0;
  int sp_count = 0;
  int avg_slots = 0;
  int trial = 0;
  double alpha1 = 0.5;
  std::uint64_t instance_seed = 0;
  GraphJob job;
  VcTopology vc;
  SystemParams params;
};

// Materializes the whole grid. The instance seed is derived from the
// positional key (type, provider count, slots, trial) only, so sweeps over
// alpha or over solvers see identical instances.
inline std::vector<GridCell> experiment_grid(const ScenarioConfig& cfg, const GridSpec& spec) {
  if (spec.types.empty() || spec.sp_counts.empty() || spec.avg_slots.empty() ||
      spec.alphas.empty() || spec.trials < 1)
    throw std::invalid_argument("experiment_grid: every axis needs at least one value");
  for (int type : spec.types) job_topology(type);  // rejects unknown types
  for (int m : spec.sp_counts)
    if (m < 1) throw std::invalid_argument("experiment_grid: provider count below 1");
  for (int s : spec.avg_slots)
    if (s < 1) throw std::invalid_argument("experiment_grid: average slots below 1");
  for (double a : spec.alphas)
    if (a < 0.0 || a > 1.0) throw std::invalid_argument("experiment_grid: alpha outside [0,1]");
  const std::vector<std::string> cfg_errors = validate_config(cfg);
  if (!cfg_errors.empty()) throw std::invalid_argument("experiment_grid: " + cfg_errors.front());

  std::vector<GridCell> cells;
  int index = 0;
  for (std::size_t ti = 0; ti < spec.types.size(); ++ti) {
    for (std::size_t mi = 0; mi < spec.sp_counts.size(); ++mi) {
      for (std::size_t si = 0; si < spec.avg_slots.size(); ++si) {
        for (int trial = 0; trial < spec.trials; ++trial) {
          const std::uint64_t ordinal =
              ((ti * spec.sp_counts.size() + mi) * spec.avg_slots.size() + si) *
                  static_cast<std::uint64_t>(spec.trials) +
              static_cast<std::uint64_t>(trial);
          const std::uint64_t instance_seed = mix_seed(cfg.seed, ordinal);
          SplitMix64 rng(instance_seed);
          const int avg = spec.avg_slots[si];
          ScenarioConfig local = cfg;
          local.sp_count_min = local.sp_count_max = spec.sp_counts[mi];
          local.slots_min = avg > 1 ? avg - 1 : 1;
          local.slots_max = avg + 1;
          GraphJob job = with_random_weights(job_topology(spec.types[ti]), cfg.edge_weight, rng);
          auto [vc, params] = random_vc(local, rng);
          for (double alpha : spec.alphas) {
            GridCell cell;
            cell.index = index++;
            cell.type = spec.types[ti];
            cell.sp_count = spec.sp_counts[mi];
            cell.avg_slots = avg;
            cell.trial = trial;
            cell.alpha1 = alpha;
            cell.instance_seed = instance_seed;
            cell.job = job;
            cell.vc = vc;
            cell.params = params;
            cell.params.alpha1 = alpha;
            cell.params.alpha2 = 1.0 - alpha;
            cells.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return cells;
}

}  // namespace vcalloc
