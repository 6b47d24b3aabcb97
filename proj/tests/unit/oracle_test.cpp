#include <doctest.h>

#include <cmath>
#include <random>

#include "netclock/multiclock.hpp"
#include "netclock/oracle.hpp"
#include "netclock/solver_dp.hpp"
#include "test_support.hpp"

using namespace netclock;
using testing_support::random_instance;

namespace {

const ICParams kDefault{0.001, 0.1};

double gain_one() { return std::log(1.0 - 0.999 * 0.9) - std::log(0.001); }

// Three influenced nodes with incompatible timing preferences plus an idle
// node. a1 needs a cut at 2, c1 needs a cut at 3, and b1 needs ticks 2 and 3
// merged; any single clock serves two of them.
testing_support::Instance conflicting_instance() {
  // a0=0 a1=1 b0=2 b1=3 c0=4 c1=5 idle=6
  const std::vector<Edge> edges{{0, 1}, {2, 3}, {4, 5}};
  testing_support::Instance inst;
  inst.graph = Graph::from_edges(edges, 7);
  const std::vector<ActivationRecord> recs{{0, 0, 1}, {0, 1, 2}, {0, 2, 1},
                                           {0, 3, 3}, {0, 4, 2}, {0, 5, 3}};
  inst.cascades = load_cascades(recs, inst.graph);
  return inst;
}

}  // namespace

TEST_CASE("single-clock oracle on small fixtures") {
  const auto chain = testing_support::chain_instance();
  const auto sol = oracle_oc(chain.graph, chain.cascades, kDefault);
  CHECK(sol.clock == clock_min(3));
  CHECK(std::abs(sol.improvement - 2 * gain_one()) < 1e-9);

  const auto g = Graph::from_edges(std::vector<Edge>{{0, 1}});
  const std::vector<ActivationRecord> one{{0, 0, 4}};
  const auto lone = oracle_oc(g, load_cascades(one, g), kDefault);
  CHECK(lone.clock == clock_max(1));
  CHECK(lone.improvement == 0.0);

  const std::vector<ActivationRecord> flat{{0, 0, 2}, {0, 1, 2}};
  const auto same = oracle_oc(g, load_cascades(flat, g), kDefault);
  CHECK(same.clock == clock_max(1));
  CHECK(same.improvement == 0.0);
}

TEST_CASE("single-clock oracle breaks ties toward the smaller cut set") {
  // A cut at 2 or at 3 serves node 1 equally well; both cuts together do not.
  const auto g = Graph::from_edges(std::vector<Edge>{{0, 1}}, 3);
  const std::vector<ActivationRecord> recs{{0, 0, 1}, {0, 2, 2}, {0, 1, 3}};
  const auto cs = load_cascades(recs, g);
  const auto sol = oracle_oc(g, cs, kDefault, NonActivationPolicy::none);
  CHECK(sol.clock == Clock(3, {2}));
}

TEST_CASE("single-clock oracle refuses long horizons") {
  const auto g = Graph::from_edges(std::vector<Edge>{{0, 1}});
  std::vector<ActivationRecord> recs;
  for (CascadeId c = 0; c < 12; ++c) {
    recs.push_back({c, 0, c + 1});
  }
  CHECK_THROWS_AS(oracle_oc(g, load_cascades(recs, g), kDefault, NonActivationPolicy::none, 10),
                  std::length_error);
}

TEST_CASE("oracle and exact solver agree") {
  std::mt19937_64 rng(109);
  const NonActivationPolicy policies[] = {NonActivationPolicy::none,
                                          NonActivationPolicy::contagious_only,
                                          NonActivationPolicy::full};
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = random_instance(rng);
    const auto policy = policies[trial % 3];
    const auto a = oracle_oc(inst.graph, inst.cascades, kDefault, policy);
    const auto b = solve_oc_dp(inst.graph, inst.cascades, kDefault, policy);
    CHECK(std::abs(a.improvement - b.improvement) < 1e-9);
  }
}

TEST_CASE("two clocks beat any single clock on conflicting timing") {
  const auto inst = conflicting_instance();
  const auto one = oracle_koc(inst.graph, inst.cascades, 1, kDefault);
  const auto two = oracle_koc(inst.graph, inst.cascades, 2, kDefault);
  CHECK(std::abs(one.total - 2 * gain_one()) < 1e-9);
  CHECK(std::abs(two.total - 3 * gain_one()) < 1e-9);
  CHECK(two.total > one.total);
  const auto best_single = oracle_oc(inst.graph, inst.cascades, kDefault,
                                     NonActivationPolicy::none);
  CHECK(std::abs(one.total - best_single.improvement) < 1e-9);
}

TEST_CASE("k-clock oracle is non-decreasing in k and bounds the greedy selection") {
  std::mt19937_64 rng(113);
  testing_support::RandomSpec spec;
  spec.max_horizon = 6;
  spec.max_nodes = 8;
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_instance(rng, spec);
    double previous = -1.0;
    for (std::size_t k = 1; k <= 3; ++k) {
      const auto opt = oracle_koc(inst.graph, inst.cascades, k, kDefault);
      CHECK(opt.total >= previous - 1e-9);
      previous = opt.total;
      const auto greedy =
          solve_koc(inst.graph, inst.cascades, k, kDefault, NonActivationPolicy::none);
      CHECK(greedy.total <= opt.total + 1e-9);
      CHECK(greedy.total >= (1.0 - std::exp(-1.0)) * opt.total - 1e-9);
    }
    const auto single = oracle_oc(inst.graph, inst.cascades, kDefault, NonActivationPolicy::none);
    CHECK(std::abs(oracle_koc(inst.graph, inst.cascades, 1, kDefault).total -
                   single.improvement) < 1e-9);
  }
}

TEST_CASE("a full menu puts every node at its own best clock") {
  const auto inst = conflicting_instance();
  const auto all = oracle_koc(inst.graph, inst.cascades, 4, kDefault);
  double sum = 0.0;
  const auto menu = enumerate_clocks(inst.cascades.horizon());
  for (NodeId v = 0; v < inst.graph.node_count(); ++v) {
    double best = 0.0;
    for (const auto& c : menu) {
      best = std::max(best, testing_support::reference_node_scores(inst.graph, inst.cascades, c,
                                                                   kDefault)[v]);
    }
    sum += best;
  }
  CHECK(std::abs(all.total - sum) < 1e-9);
}

TEST_CASE("k-clock oracle bounds") {
  const auto inst = conflicting_instance();
  CHECK_THROWS_AS(oracle_koc(inst.graph, inst.cascades, 0, kDefault), std::invalid_argument);
  const auto g = Graph::from_edges(std::vector<Edge>{{0, 1}});
  std::vector<ActivationRecord> recs;
  for (CascadeId c = 0; c < 9; ++c) {
    recs.push_back({c, 0, c + 1});
  }
  CHECK_THROWS_AS(oracle_koc(g, load_cascades(recs, g), 1, kDefault), std::length_error);

  // Five pairs wanting five different single cuts leave no shortcut for k=4.
  std::vector<Edge> edges;
  std::vector<ActivationRecord> pairs;
  for (NodeId i = 0; i < 5; ++i) {
    edges.push_back({2 * i, 2 * i + 1});
    pairs.push_back({0, 2 * i, static_cast<Timestamp>(i + 1)});
    pairs.push_back({0, 2 * i + 1, static_cast<Timestamp>(i + 2)});
  }
  const auto pg = Graph::from_edges(edges);
  CHECK_THROWS_AS(oracle_koc(pg, load_cascades(pairs, pg), 4, kDefault), std::length_error);
}
