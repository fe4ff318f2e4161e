#include <algorithm>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "vcalloc/vcalloc.hpp"

using namespace vcalloc;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<std::vector<int>> solver_sp_vectors(const Instance& inst, CostMode mode) {
  std::vector<std::vector<int>> out;
  for_each_candidate(inst.job, inst.vc, inst.params, mode,
                     [&out](const Candidate& c) { out.push_back(c.assignment.sp_vector()); });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("candidate enumeration matches the exhaustive map oracle") {
  SECTION("triangle reference instance") {
    const Instance inst = testsupport::triangle_instance();
    const auto oracle = testsupport::oracle_feasible_maps(inst.job, inst.vc, inst.params);
    const auto solver = solver_sp_vectors(inst, CostMode::PerEdge);
    CHECK(solver == oracle);
    // Capacity [2,2,1] on a 3-component job with loose thresholds: of the 27
    // maps, 9 overfill a provider, leaving 18 distinct feasible placements.
    CHECK(solver.size() == 18);
  }

  SECTION("random small instances") {
    SplitMix64 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
      const Instance inst = testsupport::random_small_instance(rng);
      const auto oracle = testsupport::oracle_feasible_maps(inst.job, inst.vc, inst.params);
      const auto solver = solver_sp_vectors(inst, CostMode::PerEdge);
      INFO("trial " << trial << ": n=" << inst.job.size() << " m=" << inst.vc.sp_count);
      CHECK(solver == oracle);
    }
  }
}

TEST_CASE("every enumerated candidate is fully evaluated and feasible") {
  const Instance inst = testsupport::showcase_instance();
  int count = 0;
  for_each_candidate(inst.job, inst.vc, inst.params, CostMode::PerEdge, [&](const Candidate& c) {
    ++count;
    REQUIRE(is_feasible(inst.job, inst.vc, inst.params, c.assignment).feasible());
    CHECK(c.completion_time == completion_time(inst.job, inst.vc, inst.params, c.assignment));
    CHECK(c.exchange_cost == exchange_cost(inst.job, inst.vc, c.assignment, CostMode::PerEdge));
    CHECK(c.objective == combine_objective(inst.params.alpha1, c.completion_time,
                                           inst.params.alpha2, c.exchange_cost));
  });
  CHECK(count > 0);
  CHECK(enumerate_candidates(inst.job, inst.vc, inst.params, CostMode::PerEdge).size() ==
        static_cast<std::size_t>(count));
}

TEST_CASE("optimal solver on the triangle reference instance") {
  const Instance inst = testsupport::triangle_instance();
  const AllocationResult res = solve_optimal(inst.job, inst.vc, inst.params);

  REQUIRE(res.feasible);
  // Best placement keeps two components on provider 0 and one on the owner:
  // completion 1.4, no paid crossing, objective 0.5*1.4.
  CHECK_THAT(res.objective, WithinAbs(0.7, 1e-12));
  CHECK(res.assignment.sp_vector() == std::vector<int>{0, 0, 2});
  CHECK(res.meta.iterations == 18);
  CHECK(res.objective ==
        objective_value(inst.job, inst.vc, inst.params, res.assignment, CostMode::PerEdge));
}

TEST_CASE("optimal solver matches the slot-level reference solver") {
  SplitMix64 rng(211);
  int feasible_count = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = testsupport::random_small_instance(rng);
    const CostMode mode = trial % 2 ? CostMode::PerPair : CostMode::PerEdge;
    const AllocationResult fast = solve_optimal(inst.job, inst.vc, inst.params, mode);
    const AllocationResult slow = solve_brute_force(inst.job, inst.vc, inst.params, mode);
    INFO("trial " << trial << ": n=" << inst.job.size() << " slots=" << inst.vc.total_slots());
    REQUIRE(fast.feasible == slow.feasible);
    if (fast.feasible) {
      ++feasible_count;
      CHECK(fast.objective == slow.objective);
      CHECK(fast.assignment.sp_vector() == slow.assignment.sp_vector());
      CHECK(is_feasible(inst.job, inst.vc, inst.params, fast.assignment).feasible());
      CHECK(is_feasible(inst.job, inst.vc, inst.params, slow.assignment).feasible());
    }
  }
  // The generator must exercise both outcomes.
  CHECK(feasible_count > 5);
  CHECK(feasible_count < 60);
}

TEST_CASE("cost mode changes the reported exchange cost consistently") {
  const Instance inst = testsupport::showcase_instance();
  const AllocationResult per_edge = solve_optimal(inst.job, inst.vc, inst.params, CostMode::PerEdge);
  const AllocationResult per_pair = solve_optimal(inst.job, inst.vc, inst.params, CostMode::PerPair);
  REQUIRE(per_edge.feasible);
  REQUIRE(per_pair.feasible);
  CHECK(per_edge.exchange_cost ==
        exchange_cost(inst.job, inst.vc, per_edge.assignment, CostMode::PerEdge));
  CHECK(per_pair.exchange_cost ==
        exchange_cost(inst.job, inst.vc, per_pair.assignment, CostMode::PerPair));
  // Per-pair never charges more than per-edge for the same placement, so the
  // per-pair optimum cannot exceed the per-edge one.
  CHECK(per_pair.objective <= per_edge.objective + 1e-12);
}

TEST_CASE("ties resolve to the lexicographically smallest provider vector") {
  // Two interchangeable providers: identical slots, transfer times and costs.
  Instance inst = testsupport::triangle_instance();
  inst.vc.trans_time = {0.2, 0.2, 0.0};
  inst.vc.set_link(0, 2, 0.01, 0.0);
  inst.vc.set_link(1, 2, 0.01, 0.0);
  inst.vc.set_link(0, 1, 0.01, 0.5);
  const AllocationResult res = solve_optimal(inst.job, inst.vc, inst.params);
  REQUIRE(res.feasible);
  // {0,0,2} and {1,1,2} tie; enumeration order guarantees the first.
  CHECK(res.assignment.sp_vector() == std::vector<int>{0, 0, 2});
}

TEST_CASE("infeasible and degenerate inputs") {
  SECTION("not enough slots anywhere") {
    Instance inst = testsupport::triangle_instance();
    inst.vc.slots = {1, 0, 1};
    const AllocationResult res = solve_optimal(inst.job, inst.vc, inst.params);
    CHECK_FALSE(res.feasible);
    CHECK(res.meta.iterations == 0);
    const AllocationResult ref = solve_brute_force(inst.job, inst.vc, inst.params);
    CHECK_FALSE(ref.feasible);
  }

  SECTION("single component settles on the owner, the zero-transfer host") {
    Instance inst = testsupport::triangle_instance();
    inst.job = GraphJob(1);
    const AllocationResult res = solve_optimal(inst.job, inst.vc, inst.params);
    REQUIRE(res.feasible);
    CHECK(res.assignment.sp_vector() == std::vector<int>{2});
    CHECK(res.objective == objective_value(inst.job, inst.vc, inst.params, res.assignment,
                                           CostMode::PerEdge));
  }

  SECTION("owner-only cloud") {
    GraphJob job(2);
    job.add_edge(0, 1, 0.1);
    VcTopology vc(1);
    vc.slots = {2};
    SystemParams params;
    const AllocationResult res = solve_optimal(job, vc, params);
    REQUIRE(res.feasible);
    CHECK(res.completion_time == params.exec_time);
    CHECK(res.exchange_cost == 0.0);
  }
}

TEST_CASE("optimal solver is deterministic") {
  const Instance inst = testsupport::showcase_instance();
  const AllocationResult a = solve_optimal(inst.job, inst.vc, inst.params);
  const AllocationResult b = solve_optimal(inst.job, inst.vc, inst.params);
  CHECK(a.assignment == b.assignment);
  CHECK(a.objective == b.objective);
  CHECK(a.meta.iterations == b.meta.iterations);
}

TEST_CASE("reference solver guard rail refuses big instances") {
  Instance inst = testsupport::showcase_instance();
  inst.vc.slots = {5, 5, 5, 5, 5};  // 25 slots
  CHECK_THROWS_AS(solve_brute_force(inst.job, inst.vc, inst.params), std::runtime_error);

  GraphJob big(7);
  for (int v = 1; v < 7; ++v) big.add_edge(0, v, 0.1);
  const Instance small = testsupport::triangle_instance();
  CHECK_THROWS_AS(solve_brute_force(big, small.vc, small.params), std::runtime_error);
}
