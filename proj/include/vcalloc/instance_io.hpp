#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "vcalloc/model.hpp"

namespace vcalloc {

// One solvable problem: job graph, cloud topology, parameters.
struct Instance {
  GraphJob job;
  VcTopology vc;
  SystemParams params;
};

// JSON schema (all indices 0-based, provider m-1 is the job owner):
// {
//   "job":    {"n": int, "type": int?, "edges": [[a, b, weight], ...]},
//   "vc":     {"m": int, "kappa": [int x m], "trans": [double x m],
//              "edges": [[j, k, rate, cost], ...]},
//   "params": {"epsilon": d, "xi": d, "alpha1": d,
//              "alpha2": d?,     // defaults to 1 - alpha1
//              "exec_time": d?}  // defaults to 1.0
// }
inline Instance parse_instance(const std::string& text) {
  using nlohmann::json;
  try {
    const json root = json::parse(text);
    Instance inst;

    const json& job = root.at("job");
    const int n = job.at("n").get<int>();
    inst.job = GraphJob(n, job.value("type", 0));
    for (const json& e : job.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        throw std::runtime_error("job.edges entries must be [a, b, weight]");
      inst.job.add_edge(e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>());
    }

    const json& vc = root.at("vc");
    const int m = vc.at("m").get<int>();
    inst.vc = VcTopology(m);
    const json& kappa = vc.at("kappa");
    const json& trans = vc.at("trans");
    if (static_cast<int>(kappa.size()) != m)
      throw std::runtime_error("vc.kappa must list one slot count per provider");
    if (static_cast<int>(trans.size()) != m)
      throw std::runtime_error("vc.trans must list one transfer time per provider");
    for (int j = 0; j < m; ++j) {
      inst.vc.slots[j] = kappa.at(j).get<int>();
      inst.vc.trans_time[j] = trans.at(j).get<double>();
    }
    for (const json& e : vc.at("edges")) {
      if (!e.is_array() || e.size() != 4)
        throw std::runtime_error("vc.edges entries must be [j, k, rate, cost]");
      const int j = e.at(0).get<int>();
      const int k = e.at(1).get<int>();
      if (j < 0 || j >= m || k < 0 || k >= m)
        throw std::runtime_error("vc.edges provider index out of range");
      inst.vc.set_link(j, k, e.at(2).get<double>(), e.at(3).get<double>());
    }

    const json& params = root.at("params");
    inst.params.epsilon = params.at("epsilon").get<double>();
    inst.params.xi = params.at("xi").get<double>();
    inst.params.alpha1 = params.at("alpha1").get<double>();
    inst.params.alpha2 = params.value("alpha2", 1.0 - inst.params.alpha1);
    inst.params.exec_time = params.value("exec_time", 1.0);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("instance parse: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("instance parse: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw std::runtime_error(std::string("instance parse: ") + e.what());
  }
}

inline std::string serialize_instance(const Instance& inst) {
  using nlohmann::json;
  json job;
  job["n"] = inst.job.size();
  job["type"] = inst.job.type_tag();
  job["edges"] = json::array();
  for (const JobEdge& e : inst.job.edges()) job["edges"].push_back({e.a, e.b, e.weight});

  json vc;
  vc["m"] = inst.vc.sp_count;
  vc["kappa"] = inst.vc.slots;
  vc["trans"] = inst.vc.trans_time;
  vc["edges"] = json::array();
  for (int j = 0; j < inst.vc.sp_count; ++j)
    for (int k = j + 1; k < inst.vc.sp_count; ++k)
      if (inst.vc.linked(j, k))
        vc["edges"].push_back({j, k, inst.vc.rate_at(j, k), inst.vc.cost_at(j, k)});

  json params;
  params["epsilon"] = inst.params.epsilon;
  params["xi"] = inst.params.xi;
  params["alpha1"] = inst.params.alpha1;
  params["alpha2"] = inst.params.alpha2;
  params["exec_time"] = inst.params.exec_time;

  json root;
  root["job"] = job;
  root["vc"] = vc;
  root["params"] = params;
  return root.dump(2) + "\n";
}

inline Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

inline void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << serialize_instance(inst);
}

}  // namespace vcalloc
