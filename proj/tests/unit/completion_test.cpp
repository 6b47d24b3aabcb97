#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "netclock/completion.hpp"
#include "netclock/simgen.hpp"

using namespace netclock;

namespace {

CompletionInstance manual(std::vector<Activation> observed, std::vector<Activation> hidden) {
  CompletionInstance inst;
  inst.observed = Cascade(0, std::move(observed));
  inst.hidden = std::move(hidden);
  return inst;
}

std::set<NodeId> nodes_of(const std::vector<Activation>& acts) {
  std::set<NodeId> out;
  for (const auto& a : acts) {
    out.insert(a.node);
  }
  return out;
}

SyntheticDataset small_world(double stretch_mean, std::uint64_t seed) {
  SimConfig cfg;
  cfg.nodes = 200;
  cfg.cascade_count = 30;
  cfg.min_cascade_size = 8;
  cfg.stretch_mean = stretch_mean;
  cfg.seed = seed;
  return simulate(cfg);
}

}  // namespace

TEST_CASE("hiding keeps the endpoints") {
  const Cascade x(0, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  Rng rng(2);
  const auto none = hide(x, 0.0, rng);
  CHECK(none.hidden.empty());
  CHECK(none.observed == x);
  const auto most = hide(x, 0.999999, rng);
  CHECK(most.observed.size() == 2);
  CHECK(most.observed.time_of(0) == 1);
  CHECK(most.observed.time_of(4) == 5);
  CHECK(most.hidden.size() == 3);
  CHECK_THROWS_AS(hide(x, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(hide(x, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(hide(Cascade(1, {{0, 1}}), 0.2, rng), std::invalid_argument);
}

TEST_CASE("hidden counts follow the binomial law") {
  std::vector<Activation> acts;
  for (NodeId v = 0; v < 12; ++v) {
    acts.push_back({v, static_cast<Timestamp>(v + 1)});
  }
  const Cascade x(0, acts);
  Rng rng(19);
  for (double rate : {0.1, 0.3, 0.6}) {
    const int trials = 10000;
    double sum = 0.0;
    for (int i = 0; i < trials; ++i) {
      const auto inst = hide(x, rate, rng);
      CHECK(inst.hidden.size() + inst.observed.size() == x.size());
      sum += static_cast<double>(inst.hidden.size());
    }
    const double n = static_cast<double>(x.size() - 2);
    const double sigma = std::sqrt(n * rate * (1 - rate) / trials);
    CHECK(std::abs(sum / trials - n * rate) <= 3 * sigma);
  }
}

TEST_CASE("a hidden middle node on a path is recovered") {
  const auto g = Graph::from_edges(std::vector<Edge>{{0, 1}, {1, 2}});
  const auto inst = manual({{0, 1}, {2, 3}}, {{1, 2}});
  const auto res = complete(g, inst, clock_min(3));
  REQUIRE(res.feasible);
  REQUIRE(res.inferred.size() == 1);
  CHECK(res.inferred[0].node == 1);
  CHECK(res.precision == 1.0);
  CHECK(res.recall == 1.0);
  CHECK(res.f1 == 1.0);
}

TEST_CASE("a diamond yields one of the two middle nodes") {
  const auto g = Graph::from_edges(std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  const auto inst = manual({{0, 1}, {3, 3}}, {{1, 2}});
  const auto res = complete(g, inst, clock_min(3));
  REQUIRE(res.feasible);
  REQUIRE(res.inferred.size() == 1);
  const NodeId pick = res.inferred[0].node;
  CHECK((pick == 1 || pick == 2));
  const double hit = pick == 1 ? 1.0 : 0.0;
  CHECK(res.recall == hit);
  CHECK(res.precision == hit);
}

TEST_CASE("unreachable depths make the reconstruction infeasible") {
  const auto g = Graph::from_edges(std::vector<Edge>{{0, 1}, {1, 2}});
  SUBCASE("too far") {
    const auto res = complete(g, manual({{0, 1}, {2, 2}}, {}), clock_min(2));
    CHECK_FALSE(res.feasible);
    CHECK(res.precision == 0.0);
    CHECK(res.recall == 0.0);
    CHECK(res.f1 == 0.0);
  }
  SUBCASE("chain budget") {
    const auto res = complete(g, manual({{0, 1}, {2, 3}}, {{1, 2}}), clock_min(3),
                              CompletionOptions{1});
    CHECK_FALSE(res.feasible);
  }
  SUBCASE("nothing hidden and nothing missing") {
    const auto res = complete(g, manual({{0, 1}, {1, 2}, {2, 3}}, {}), clock_min(3));
    CHECK(res.feasible);
    CHECK(res.inferred.empty());
    CHECK(res.precision == 1.0);
    CHECK(res.recall == 1.0);
  }
}

TEST_CASE("complete observations under the true clock are always feasible") {
  for (double mean : {1.0, 3.0}) {
    const auto data = small_world(mean, 12);
    for (const auto& x : data.stretched.cascades()) {
      CompletionInstance inst;
      inst.observed = x;
      const auto res = complete(data.graph, inst, data.hidden);
      CHECK(res.feasible);
      CHECK(res.inferred.empty());
      CHECK(res.precision == 1.0);
      CHECK(res.recall == 1.0);
    }
  }
}

TEST_CASE("precision counts the inferred activations that were hidden") {
  const auto data = small_world(2.0, 13);
  Rng rng(5);
  for (double rate : {0.2, 0.4}) {
    for (const auto& x : data.stretched.cascades()) {
      const auto inst = hide(x, rate, rng);
      const auto res = complete(data.graph, inst, data.hidden);
      CHECK(res.precision >= 0.0);
      CHECK(res.precision <= 1.0);
      CHECK(res.recall >= 0.0);
      CHECK(res.recall <= 1.0);
      if (!res.feasible) {
        continue;
      }
      const auto inferred = nodes_of(res.inferred);
      const auto hidden = nodes_of(inst.hidden);
      CHECK(inferred.size() == res.inferred.size());
      std::size_t both = 0;
      for (auto v : inferred) {
        both += hidden.count(v);
        CHECK_FALSE(inst.observed.time_of(v).has_value());
      }
      if (!inferred.empty()) {
        CHECK(std::abs(res.precision * static_cast<double>(inferred.size()) -
                       static_cast<double>(both)) < 1e-9);
      }
      if (!hidden.empty()) {
        CHECK(std::abs(res.recall * static_cast<double>(hidden.size()) -
                       static_cast<double>(both)) < 1e-9);
      }
      const double pr = res.precision + res.recall;
      CHECK(std::abs(res.f1 - (pr > 0 ? 2 * res.precision * res.recall / pr : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("batch evaluation") {
  const auto data = small_world(2.0, 14);
  const std::vector<double> rates{0.0, 0.2, 0.5};
  const auto rows = completion_batch(data.graph, data.stretched, data.hidden, rates, 77);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].drop_rate == 0.0);
  CHECK(rows[0].success_rate == 1.0);
  CHECK(rows[0].recall == 1.0);
  for (const auto& r : rows) {
    CHECK(r.cascades == data.stretched.cascade_count());
  }
  const auto again = completion_batch(data.graph, data.stretched, data.hidden, rates, 77, 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].success_rate == again[i].success_rate);
    CHECK(rows[i].precision == again[i].precision);
    CHECK(rows[i].recall == again[i].recall);
    CHECK(rows[i].f1 == again[i].f1);
  }
}
