#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace vcalloc {

// How data exchange between providers is charged:
//   PerEdge: every job edge whose endpoints sit on different providers pays
//            the provider-pair cost once (two edges across the same pair pay
//            twice).
//   PerPair: each provider pair with at least one crossing edge pays once,
//            no matter how many edges cross it.
enum class CostMode { PerEdge, PerPair };

struct JobEdge {
  int a = 0;
  int b = 0;
  double weight = 0.0;  // data exchange duration the hosts must sustain
};

// Undirected weighted graph of job components. Vertices are 0..size()-1.
class GraphJob {
 public:
  GraphJob() = default;
  explicit GraphJob(int component_count, int type_tag = 0)
      : n_(component_count),
        type_tag_(type_tag),
        adj_(static_cast<std::size_t>(component_count) * component_count, 0),
        weight_(static_cast<std::size_t>(component_count) * component_count, 0.0),
        neighbors_(component_count) {
    if (component_count < 0) throw std::invalid_argument("GraphJob: negative component count");
  }

  int size() const { return n_; }
  int type_tag() const { return type_tag_; }

  // Stores the edge in both directions; re-adding an edge overwrites its weight.
  void add_edge(int a, int b, double weight) {
    check_vertex(a);
    check_vertex(b);
    if (adj_[idx(a, b)]) {
      weight_[idx(a, b)] = weight;
      weight_[idx(b, a)] = weight;
      for (auto& e : edges_) {
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) e.weight = weight;
      }
      return;
    }
    adj_[idx(a, b)] = 1;
    weight_[idx(a, b)] = weight;
    neighbors_[a].push_back(b);
    if (a != b) {
      adj_[idx(b, a)] = 1;
      weight_[idx(b, a)] = weight;
      neighbors_[b].push_back(a);
    }
    edges_.push_back({a, b, weight});
  }

  bool has_edge(int a, int b) const { return adj_[idx(a, b)] != 0; }
  double weight(int a, int b) const { return weight_[idx(a, b)]; }
  const std::vector<JobEdge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int i) const { return neighbors_[i]; }

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b);
  }
  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::out_of_range("GraphJob: vertex out of range");
  }

  int n_ = 0;
  int type_tag_ = 0;
  std::vector<std::uint8_t> adj_;
  std::vector<double> weight_;
  std::vector<JobEdge> edges_;
  std::vector<std::vector<int>> neighbors_;
};

// One vehicular cloud. Providers are 0..sp_count-1; the last index is the job
// owner acting as a virtual provider: zero transmission time and a one-hop
// link to every other provider. All pairwise tables are dense and symmetric.
struct VcTopology {
  int sp_count = 0;
  std::vector<int> slots;          // idle computing slots per provider
  std::vector<double> trans_time;  // owner->provider transfer time per component
  std::vector<std::uint8_t> link;  // one-hop reachability
  std::vector<double> rate;        // exponential contact rate where linked
  std::vector<double> cost;        // data exchange cost between linked providers

  VcTopology() = default;
  explicit VcTopology(int m)
      : sp_count(m),
        slots(m, 0),
        trans_time(m, 0.0),
        link(static_cast<std::size_t>(m) * m, 0),
        rate(static_cast<std::size_t>(m) * m, 0.0),
        cost(static_cast<std::size_t>(m) * m, 0.0) {
    if (m < 1) throw std::invalid_argument("VcTopology: need at least the job owner");
  }

  int jo() const { return sp_count - 1; }

  int total_slots() const {
    int total = 0;
    for (int s : slots) total += s;
    return total;
  }

  bool linked(int j, int k) const { return link[idx(j, k)] != 0; }
  double rate_at(int j, int k) const { return rate[idx(j, k)]; }
  double cost_at(int j, int k) const { return cost[idx(j, k)]; }

  // Symmetric insert; re-setting a pair overwrites both fields.
  void set_link(int j, int k, double contact_rate, double exchange_cost) {
    if (j == k) throw std::invalid_argument("VcTopology: self link");
    link[idx(j, k)] = link[idx(k, j)] = 1;
    rate[idx(j, k)] = rate[idx(k, j)] = contact_rate;
    cost[idx(j, k)] = cost[idx(k, j)] = exchange_cost;
  }

 private:
  std::size_t idx(int j, int k) const {
    return static_cast<std::size_t>(j) * sp_count + static_cast<std::size_t>(k);
  }
};

// Placement of components onto provider slots. sp(i) < 0 means unplaced.
// place/clear do not police occupancy; solvers keep their own slot counts.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int component_count) : sp_(component_count, -1), slot_(component_count, -1) {}

  int size() const { return static_cast<int>(sp_.size()); }
  int sp(int comp) const { return sp_[comp]; }
  int slot(int comp) const { return slot_[comp]; }
  bool placed(int comp) const { return sp_[comp] >= 0; }

  void place(int comp, int sp, int slot) {
    sp_[comp] = sp;
    slot_[comp] = slot;
  }
  void clear(int comp) {
    sp_[comp] = -1;
    slot_[comp] = -1;
  }

  bool complete() const {
    for (int s : sp_)
      if (s < 0) return false;
    return true;
  }

  int placed_count() const {
    int c = 0;
    for (int s : sp_) c += (s >= 0);
    return c;
  }

  std::vector<int> per_sp_counts(int sp_count) const {
    std::vector<int> counts(sp_count, 0);
    for (int s : sp_)
      if (s >= 0) ++counts[s];
    return counts;
  }

  const std::vector<int>& sp_vector() const { return sp_; }

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> sp_;
  std::vector<int> slot_;
};

// Scalarization weights and feasibility thresholds shared by all solvers.
struct SystemParams {
  double epsilon = 0.9;    // minimum contact probability between cooperating hosts
  double xi = 0.9;         // minimum owner-transfer success probability per provider
  double alpha1 = 0.5;     // completion-time weight
  double alpha2 = 0.5;     // exchange-cost weight; alpha1 + alpha2 must be exactly 1
  double exec_time = 1.0;  // execution time once all components have arrived
};

struct SolverMeta {
  std::uint64_t iterations = 0;  // candidates examined or Monte-Carlo rounds
  std::uint64_t seed = 0;        // 0 for deterministic solvers
  double wall_ms = 0.0;
};

struct AllocationResult {
  Assignment assignment;
  double completion_time = std::numeric_limits<double>::infinity();
  double exchange_cost = std::numeric_limits<double>::infinity();
  double objective = std::numeric_limits<double>::infinity();
  bool feasible = false;
  SolverMeta meta;
};

// --- validation ------------------------------------------------------------
// Validators collect every problem instead of throwing, so a CLI can report
// all of them at once. An empty result means the object is usable.

inline std::vector<std::string> validate_job(const GraphJob& job) {
  std::vector<std::string> errors;
  if (job.size() < 1) {
    errors.push_back("job must have at least one component");
    return errors;
  }
  for (const JobEdge& e : job.edges()) {
    if (e.a == e.b)
      errors.push_back("self-loop on component " + std::to_string(e.a));
    if (e.weight < 0.0)
      errors.push_back("negative exchange duration on edge (" + std::to_string(e.a) + "," +
                       std::to_string(e.b) + ")");
  }
  // Connectivity: a job that splits into independent pieces is outside the
  // model (every component must be reachable through exchange edges).
  std::vector<std::uint8_t> seen(job.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : job.neighbors(v)) {
      if (w != v && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  for (int v = 0; v < job.size(); ++v) {
    if (!seen[v]) errors.push_back("component " + std::to_string(v) + " unreachable from component 0");
  }
  return errors;
}

inline std::vector<std::string> validate_topology(const VcTopology& vc) {
  std::vector<std::string> errors;
  const int m = vc.sp_count;
  if (m < 1) {
    errors.push_back("topology must contain the job owner");
    return errors;
  }
  if (static_cast<int>(vc.slots.size()) != m || static_cast<int>(vc.trans_time.size()) != m ||
      vc.link.size() != static_cast<std::size_t>(m) * m ||
      vc.rate.size() != static_cast<std::size_t>(m) * m ||
      vc.cost.size() != static_cast<std::size_t>(m) * m) {
    errors.push_back("table sizes disagree with sp_count");
    return errors;
  }
  for (int j = 0; j < m; ++j) {
    if (vc.slots[j] < 0) errors.push_back("negative slot count on provider " + std::to_string(j));
    if (vc.trans_time[j] < 0.0)
      errors.push_back("negative transmission time on provider " + std::to_string(j));
  }
  if (vc.trans_time[vc.jo()] != 0.0)
    errors.push_back("job owner transmission time must be 0");
  for (int j = 0; j < m; ++j) {
    if (vc.linked(j, j)) errors.push_back("self link on provider " + std::to_string(j));
    for (int k = j + 1; k < m; ++k) {
      const std::string pair = "(" + std::to_string(j) + "," + std::to_string(k) + ")";
      if (vc.linked(j, k) != vc.linked(k, j) || vc.rate_at(j, k) != vc.rate_at(k, j) ||
          vc.cost_at(j, k) != vc.cost_at(k, j))
        errors.push_back("asymmetric entries for pair " + pair);
      if (vc.linked(j, k)) {
        if (!(vc.rate_at(j, k) > 0.0)) errors.push_back("non-positive contact rate on pair " + pair);
        if (vc.cost_at(j, k) < 0.0) errors.push_back("negative exchange cost on pair " + pair);
      }
    }
  }
  for (int j = 0; j + 1 < m; ++j) {
    if (!vc.linked(j, vc.jo()))
      errors.push_back("provider " + std::to_string(j) + " has no link to the job owner");
  }
  return errors;
}

inline std::vector<std::string> validate_params(const SystemParams& p) {
  std::vector<std::string> errors;
  if (!(p.epsilon > 0.0) || p.epsilon > 1.0) errors.push_back("epsilon must lie in (0,1]");
  if (!(p.xi > 0.0) || p.xi > 1.0) errors.push_back("xi must lie in (0,1]");
  if (p.alpha1 < 0.0 || p.alpha1 > 1.0) errors.push_back("alpha1 must lie in [0,1]");
  if (p.alpha2 < 0.0 || p.alpha2 > 1.0) errors.push_back("alpha2 must lie in [0,1]");
  // Exact check is safe: for any double a in [0,1], a + (1-a) rounds to 1.
  if (p.alpha1 + p.alpha2 != 1.0) errors.push_back("alpha1 + alpha2 must equal 1");
  if (p.exec_time < 0.0) errors.push_back("execution time must be non-negative");
  return errors;
}

// Throws unless the assignment is complete and structurally consistent with
// the instance. Objective and constraint evaluators call this up front.
inline void require_complete(const GraphJob& job, const VcTopology& vc, const Assignment& x) {
  if (x.size() != job.size())
    throw std::invalid_argument("assignment sized for a different job");
  for (int i = 0; i < x.size(); ++i) {
    if (!x.placed(i))
      throw std::invalid_argument("component " + std::to_string(i) + " is unplaced");
    if (x.sp(i) >= vc.sp_count)
      throw std::invalid_argument("component " + std::to_string(i) + " placed on unknown provider");
  }
}

// Binary exchange indicator: 1 for provider pairs that host at least one
// connected component pair, 0 elsewhere (diagonal stays 0). Symmetric.
inline std::vector<std::uint8_t> exchange_indicator(const GraphJob& job, const VcTopology& vc,
                                                    const Assignment& x) {
  require_complete(job, vc, x);
  const int m = vc.sp_count;
  std::vector<std::uint8_t> y(static_cast<std::size_t>(m) * m, 0);
  for (const JobEdge& e : job.edges()) {
    const int j = x.sp(e.a);
    const int k = x.sp(e.b);
    if (j != k) {
      y[static_cast<std::size_t>(j) * m + k] = 1;
      y[static_cast<std::size_t>(k) * m + j] = 1;
    }
  }
  return y;
}

}  // namespace vcalloc
