#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "vcalloc/brute_force.hpp"
#include "vcalloc/model.hpp"
#include "vcalloc/optimal.hpp"
#include "vcalloc/randomized.hpp"
#include "vcalloc/rng.hpp"
#include "vcalloc/scenario.hpp"

namespace vcalloc {

// Solver ids accepted in configs and on the command line:
//   "opt"    exact enumeration solver
//   "rhtsi"  randomized hierarchical-tree solver (one task per entry in
//            `iteration_counts`)
//   "brute"  naive reference solver (small instances only)
struct ExperimentConfig {
  ScenarioConfig scenario;
  GridSpec grid;
  std::vector<std::string> solvers{"opt", "rhtsi"};
  std::vector<int> iteration_counts{100};
  CostMode cost_mode = CostMode::PerEdge;
  bool measure_wall_time = true;  // false pins wall_ms to 0 for byte-stable output
  int threads = 0;                // 0 = hardware concurrency
};

// One CSV row. avg_slots is carried for aggregation but not emitted in the
// per-run table.
struct RunRecord {
  int type = 0;
  int m = 0;
  int total_slots = 0;
  int avg_slots = 0;
  std::uint64_t seed = 0;
  std::string solver;
  int r = 0;  // randomized rounds; 0 for deterministic solvers
  double alpha1 = 0.5;
  double objective = 0.0;
  double completion_time = 0.0;
  double exchange_cost = 0.0;
  bool feasible = false;
  double wall_ms = 0.0;
};

namespace detail {

struct SolverVariant {
  std::string name;
  int r = 0;
};

inline std::vector<SolverVariant> expand_solvers(const ExperimentConfig& cfg) {
  std::vector<SolverVariant> out;
  for (const std::string& s : cfg.solvers) {
    if (s == "rhtsi") {
      if (cfg.iteration_counts.empty())
        throw std::invalid_argument("rhtsi requested but iteration_counts is empty");
      for (int r : cfg.iteration_counts) {
        if (r < 1) throw std::invalid_argument("iteration_counts entries must be positive");
        out.push_back({s, r});
      }
    } else if (s == "opt" || s == "brute") {
      out.push_back({s, 0});
    } else {
      throw std::invalid_argument("unknown solver id: " + s);
    }
  }
  if (out.empty()) throw std::invalid_argument("no solvers configured");
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace detail

// Runs the full grid with every configured solver variant. Work is spread
// over a thread pool, but each task's result lands at its precomputed index
// and every randomized run draws its seed from the task's position, so the
// record vector does not depend on thread count or scheduling.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg) {
  const std::vector<GridCell> cells = experiment_grid(cfg.scenario, cfg.grid);
  const std::vector<detail::SolverVariant> variants = detail::expand_solvers(cfg);

  struct Task {
    const GridCell* cell;
    const detail::SolverVariant* variant;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  tasks.reserve(cells.size() * variants.size());
  for (const GridCell& cell : cells) {
    for (std::size_t v = 0; v < variants.size(); ++v) {
      // Seed depends on the instance and the variant slot, never on the
      // schedule; sweeping alpha keeps the seed because the instance seed
      // ignores alpha and the variant slot is unchanged.
      tasks.push_back({&cell, &variants[v], mix_seed(cell.instance_seed, v + 1)});
    }
  }

  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size() || failed.load()) return;
      const Task& task = tasks[i];
      const GridCell& cell = *task.cell;
      try {
        AllocationResult res;
        if (task.variant->name == "opt")
          res = solve_optimal(cell.job, cell.vc, cell.params, cfg.cost_mode);
        else if (task.variant->name == "brute")
          res = solve_brute_force(cell.job, cell.vc, cell.params, cfg.cost_mode);
        else
          res = solve_randomized(cell.job, cell.vc, cell.params, task.variant->r, task.seed,
                                 cfg.cost_mode);
        RunRecord rec;
        rec.type = cell.type;
        rec.m = cell.sp_count;
        rec.total_slots = cell.vc.total_slots();
        rec.avg_slots = cell.avg_slots;
        rec.seed = cell.instance_seed;
        rec.solver = task.variant->name;
        rec.r = task.variant->r;
        rec.alpha1 = cell.alpha1;
        rec.objective = res.objective;
        rec.completion_time = res.completion_time;
        rec.exchange_cost = res.exchange_cost;
        rec.feasible = res.feasible;
        rec.wall_ms = cfg.measure_wall_time ? res.meta.wall_ms : 0.0;
        records[i] = std::move(rec);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failure = e.what();
        failed.store(true);
        return;
      }
    }
  };

  unsigned thread_count = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                          : std::thread::hardware_concurrency();
  if (thread_count == 0) thread_count = 1;
  if (thread_count > tasks.size()) thread_count = static_cast<unsigned>(tasks.size());
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failed.load()) throw std::runtime_error("experiment task failed: " + failure);
  return records;
}

inline std::string records_to_csv(const std::vector<RunRecord>& records) {
  std::string out =
      "type,m,total_slots,seed,solver,r,alpha1,objective,completion_time,exchange_cost,"
      "feasible,wall_ms\n";
  for (const RunRecord& rec : records) {
    out += std::to_string(rec.type) + ',' + std::to_string(rec.m) + ',' +
           std::to_string(rec.total_slots) + ',' + std::to_string(rec.seed) + ',' + rec.solver +
           ',' + std::to_string(rec.r) + ',' + detail::format_double(rec.alpha1) + ',' +
           detail::format_double(rec.objective) + ',' +
           detail::format_double(rec.completion_time) + ',' +
           detail::format_double(rec.exchange_cost) + ',' + (rec.feasible ? "1" : "0") + ',' +
           detail::format_double(rec.wall_ms) + '\n';
  }
  return out;
}

// Aggregates per grid cell group (type, m, avg_slots, solver, r, alpha1), in
// first-appearance order. Objective statistics cover feasible runs only;
// stddev is the population form.
inline std::string summary_to_csv(const std::vector<RunRecord>& records) {
  struct Group {
    int type, m, avg_slots, r;
    std::string solver;
    double alpha1;
    int runs = 0;
    int feasible_runs = 0;
    double sum_obj = 0, sum_obj_sq = 0, sum_ct = 0, sum_xc = 0, sum_wall = 0;
  };
  std::vector<Group> groups;
  for (const RunRecord& rec : records) {
    Group* g = nullptr;
    for (Group& cand : groups) {
      if (cand.type == rec.type && cand.m == rec.m && cand.avg_slots == rec.avg_slots &&
          cand.solver == rec.solver && cand.r == rec.r && cand.alpha1 == rec.alpha1) {
        g = &cand;
        break;
      }
    }
    if (!g) {
      groups.push_back({rec.type, rec.m, rec.avg_slots, rec.r, rec.solver, rec.alpha1});
      g = &groups.back();
    }
    ++g->runs;
    g->sum_wall += rec.wall_ms;
    if (rec.feasible) {
      ++g->feasible_runs;
      g->sum_obj += rec.objective;
      g->sum_obj_sq += rec.objective * rec.objective;
      g->sum_ct += rec.completion_time;
      g->sum_xc += rec.exchange_cost;
    }
  }
  std::string out =
      "type,m,avg_slots,solver,r,alpha1,runs,feasible_runs,mean_objective,stddev_objective,"
      "mean_completion_time,mean_exchange_cost,mean_wall_ms\n";
  for (const Group& g : groups) {
    const double nf = g.feasible_runs;
    const double mean = g.feasible_runs ? g.sum_obj / nf : 0.0;
    const double var = g.feasible_runs ? g.sum_obj_sq / nf - mean * mean : 0.0;
    out += std::to_string(g.type) + ',' + std::to_string(g.m) + ',' +
           std::to_string(g.avg_slots) + ',' + g.solver + ',' + std::to_string(g.r) + ',' +
           detail::format_double(g.alpha1) + ',' + std::to_string(g.runs) + ',' +
           std::to_string(g.feasible_runs) + ',' + detail::format_double(mean) + ',' +
           detail::format_double(std::sqrt(var > 0.0 ? var : 0.0)) + ',' +
           detail::format_double(g.feasible_runs ? g.sum_ct / nf : 0.0) + ',' +
           detail::format_double(g.feasible_runs ? g.sum_xc / nf : 0.0) + ',' +
           detail::format_double(g.runs ? g.sum_wall / g.runs : 0.0) + '\n';
  }
  return out;
}

// JSON config. Every field is optional; omitted ones keep the defaults.
// {
//   "scenario": {"sp_count_min": .., "sp_count_max": .., "slots_min": ..,
//                "slots_max": .., "link_probability": ..,
//                "trans_time": [lo, hi], "exchange_cost": [lo, hi],
//                "edge_weight": [lo, hi], "contact_rate": [lo, hi],
//                "epsilon": .., "xi": .., "alpha1": .., "exec_time": ..,
//                "seed": ..},
//   "grid": {"types": [..], "sp_counts": [..], "avg_slots": [..],
//            "alphas": [..], "trials": ..},
//   "solvers": ["opt", "rhtsi"],
//   "iteration_counts": [100],
//   "cost_mode": "per-edge" | "per-pair",
//   "measure_wall_time": true,
//   "threads": 0
// }
inline ExperimentConfig parse_experiment_config(const std::string& text) {
  using nlohmann::json;
  try {
    const json root = json::parse(text);
    ExperimentConfig cfg;
    if (root.contains("scenario")) {
      const json& s = root.at("scenario");
      ScenarioConfig& sc = cfg.scenario;
      sc.sp_count_min = s.value("sp_count_min", sc.sp_count_min);
      sc.sp_count_max = s.value("sp_count_max", sc.sp_count_max);
      sc.slots_min = s.value("slots_min", sc.slots_min);
      sc.slots_max = s.value("slots_max", sc.slots_max);
      sc.link_probability = s.value("link_probability", sc.link_probability);
      auto interval = [&s](const char* key, Interval fallback) {
        if (!s.contains(key)) return fallback;
        const json& iv = s.at(key);
        if (!iv.is_array() || iv.size() != 2)
          throw std::runtime_error(std::string(key) + " must be [lo, hi]");
        return Interval{iv.at(0).get<double>(), iv.at(1).get<double>()};
      };
      sc.trans_time = interval("trans_time", sc.trans_time);
      sc.exchange_cost = interval("exchange_cost", sc.exchange_cost);
      sc.edge_weight = interval("edge_weight", sc.edge_weight);
      sc.contact_rate = interval("contact_rate", sc.contact_rate);
      sc.epsilon = s.value("epsilon", sc.epsilon);
      sc.xi = s.value("xi", sc.xi);
      sc.alpha1 = s.value("alpha1", sc.alpha1);
      sc.exec_time = s.value("exec_time", sc.exec_time);
      sc.seed = s.value("seed", sc.seed);
    }
    if (root.contains("grid")) {
      const json& g = root.at("grid");
      GridSpec& gs = cfg.grid;
      if (g.contains("types")) gs.types = g.at("types").get<std::vector<int>>();
      if (g.contains("sp_counts")) gs.sp_counts = g.at("sp_counts").get<std::vector<int>>();
      if (g.contains("avg_slots")) gs.avg_slots = g.at("avg_slots").get<std::vector<int>>();
      if (g.contains("alphas")) gs.alphas = g.at("alphas").get<std::vector<double>>();
      gs.trials = g.value("trials", gs.trials);
    }
    if (root.contains("solvers")) cfg.solvers = root.at("solvers").get<std::vector<std::string>>();
    if (root.contains("iteration_counts"))
      cfg.iteration_counts = root.at("iteration_counts").get<std::vector<int>>();
    if (root.contains("cost_mode")) {
      const std::string mode = root.at("cost_mode").get<std::string>();
      if (mode == "per-edge")
        cfg.cost_mode = CostMode::PerEdge;
      else if (mode == "per-pair")
        cfg.cost_mode = CostMode::PerPair;
      else
        throw std::runtime_error("cost_mode must be per-edge or per-pair");
    }
    cfg.measure_wall_time = root.value("measure_wall_time", cfg.measure_wall_time);
    cfg.threads = root.value("threads", cfg.threads);
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("experiment config parse: ") + e.what());
  }
}

}  // namespace vcalloc
