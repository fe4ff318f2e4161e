// Command-line front end: solve one instance, run an experiment grid, or
// validate an instance file.
//
// Exit codes: 0 success (solve: feasible allocation found), 2 infeasible /
// validation failed, 1 usage or input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcalloc/vcalloc.hpp"

namespace {

using nlohmann::json;

int validate_or_fail(const vcalloc::Instance& inst, std::ostream& err) {
  std::vector<std::string> problems = vcalloc::validate_job(inst.job);
  for (const std::string& e : vcalloc::validate_topology(inst.vc)) problems.push_back(e);
  for (const std::string& e : vcalloc::validate_params(inst.params)) problems.push_back(e);
  if (problems.empty()) return 0;
  for (const std::string& p : problems) err << "invalid instance: " << p << "\n";
  return 1;
}

json result_to_json(const vcalloc::AllocationResult& res, const std::string& solver,
                    const vcalloc::SystemParams& params, vcalloc::CostMode mode,
                    bool include_wall) {
  json out;
  out["solver"] = solver;
  out["feasible"] = res.feasible;
  out["objective"] = res.objective;
  out["completion_time"] = res.completion_time;
  out["exchange_cost"] = res.exchange_cost;
  out["alpha1"] = params.alpha1;
  out["alpha2"] = params.alpha2;
  out["cost_mode"] = mode == vcalloc::CostMode::PerEdge ? "per-edge" : "per-pair";
  out["iterations"] = res.meta.iterations;
  out["seed"] = res.meta.seed;
  json placement = json::array();
  json slots = json::array();
  for (int i = 0; i < res.assignment.size(); ++i) {
    placement.push_back(res.assignment.sp(i));
    slots.push_back(res.assignment.slot(i));
  }
  out["placement"] = placement;
  out["slot"] = slots;
  if (include_wall) out["wall_ms"] = res.meta.wall_ms;
  return out;
}

int cmd_solve(const std::string& path, const std::string& solver, int iterations,
              std::uint64_t seed, double alpha1, bool alpha_set, const std::string& cost_mode,
              const std::string& out_path, bool no_wall) {
  vcalloc::Instance inst;
  try {
    inst = vcalloc::load_instance(path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  if (alpha_set) {
    inst.params.alpha1 = alpha1;
    inst.params.alpha2 = 1.0 - alpha1;
  }
  if (int rc = validate_or_fail(inst, std::cerr)) return rc;

  const vcalloc::CostMode mode =
      cost_mode == "per-pair" ? vcalloc::CostMode::PerPair : vcalloc::CostMode::PerEdge;
  vcalloc::AllocationResult res;
  try {
    if (solver == "opt")
      res = vcalloc::solve_optimal(inst.job, inst.vc, inst.params, mode);
    else if (solver == "brute")
      res = vcalloc::solve_brute_force(inst.job, inst.vc, inst.params, mode);
    else
      res = vcalloc::solve_randomized(inst.job, inst.vc, inst.params, iterations, seed, mode);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  const std::string text = result_to_json(res, solver, inst.params, mode, !no_wall).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return 1;
    }
    out << text;
  }
  return res.feasible ? 0 : 2;
}

int cmd_experiment(const std::string& config_path, const std::string& out_path,
                   const std::string& summary_path, int threads, std::uint64_t seed,
                   bool seed_set) {
  vcalloc::ExperimentConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "cannot open config: " << config_path << "\n";
      return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
      cfg = vcalloc::parse_experiment_config(buffer.str());
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 1;
    }
  }
  if (threads > 0) cfg.threads = threads;
  if (seed_set) cfg.scenario.seed = seed;

  std::vector<vcalloc::RunRecord> records;
  try {
    records = vcalloc::run_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }

  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "cannot write " << out_path << "\n";
    return 1;
  }
  out << vcalloc::records_to_csv(records);
  if (!summary_path.empty()) {
    std::ofstream summary(summary_path);
    if (!summary) {
      std::cerr << "cannot write " << summary_path << "\n";
      return 1;
    }
    summary << vcalloc::summary_to_csv(records);
  }
  std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
  return 0;
}

int cmd_validate(const std::string& path) {
  vcalloc::Instance inst;
  try {
    inst = vcalloc::load_instance(path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  std::vector<std::string> problems = vcalloc::validate_job(inst.job);
  for (const std::string& e : vcalloc::validate_topology(inst.vc)) problems.push_back(e);
  for (const std::string& e : vcalloc::validate_params(inst.params)) problems.push_back(e);
  if (problems.empty()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const std::string& p : problems) std::cout << p << "\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"allocate computation-intensive job graphs onto vehicular clouds"};
  app.require_subcommand(1);

  // solve
  std::string instance_path, solver = "opt", cost_mode = "per-edge", out_path;
  int iterations = 500;
  std::uint64_t seed = 1;
  double alpha1 = 0.5;
  bool no_wall = false;
  CLI::App* solve = app.add_subcommand("solve", "solve one instance file");
  solve->add_option("instance", instance_path, "instance JSON file")->required();
  solve->add_option("--solver", solver, "opt, rhtsi, or brute")
      ->check(CLI::IsMember({"opt", "rhtsi", "brute"}));
  solve->add_option("--iterations", iterations, "randomized rounds (rhtsi)")
      ->check(CLI::PositiveNumber);
  solve->add_option("--seed", seed, "randomized seed (rhtsi)");
  CLI::Option* alpha_opt =
      solve->add_option("--alpha1", alpha1, "override completion-time weight; sets alpha2 = 1 - alpha1")
          ->check(CLI::Range(0.0, 1.0));
  solve->add_option("--cost-mode", cost_mode, "per-edge or per-pair")
      ->check(CLI::IsMember({"per-edge", "per-pair"}));
  solve->add_option("--out", out_path, "write the result JSON here instead of stdout");
  solve->add_flag("--no-wall", no_wall, "omit wall_ms from the result (reproducible output)");

  // experiment
  std::string config_path, csv_path, summary_path;
  int threads = 0;
  std::uint64_t exp_seed = 0;
  CLI::App* experiment = app.add_subcommand("experiment", "run a benchmark grid to CSV");
  experiment->add_option("--config", config_path, "experiment config JSON");
  experiment->add_option("--out", csv_path, "output CSV path")->required();
  experiment->add_option("--summary", summary_path, "also write per-cell aggregates here");
  experiment->add_option("--threads", threads, "worker threads (0 = hardware)");
  CLI::Option* seed_opt = experiment->add_option("--seed", exp_seed, "override the scenario seed");

  // validate
  std::string validate_path;
  CLI::App* validate = app.add_subcommand("validate", "check an instance file");
  validate->add_option("instance", validate_path, "instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Collapse CLI11's assorted parse-error codes onto the documented
    // usage-error status; --help and --version stay 0.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (solve->parsed())
    return cmd_solve(instance_path, solver, iterations, seed, alpha1, alpha_opt->count() > 0,
                     cost_mode, out_path, no_wall);
  if (experiment->parsed())
    return cmd_experiment(config_path, csv_path, summary_path, threads, exp_seed,
                          seed_opt->count() > 0);
  return cmd_validate(validate_path);
}
