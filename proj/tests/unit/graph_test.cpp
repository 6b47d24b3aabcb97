#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "netclock/graph.hpp"

using namespace netclock;

TEST_CASE("empty edge list yields an empty graph") {
  const auto g = load_graph({});
  CHECK(g.node_count() == 0);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("adjacency is populated in both directions") {
  const std::vector<Edge> edges{{0, 1}, {1, 2}};
  const auto g = load_graph(edges);
  CHECK(g.node_count() == 3);
  REQUIRE(g.in_neighbors(2).size() == 1);
  CHECK(g.in_neighbors(2)[0] == 1);
  REQUIRE(g.out_neighbors(0).size() == 1);
  CHECK(g.out_neighbors(0)[0] == 1);
  CHECK(g.has_edge(0, 1));
  CHECK_FALSE(g.has_edge(1, 0));
}

TEST_CASE("in_neighbors follows the definition") {
  const std::vector<Edge> two{{0, 2}, {1, 2}};
  const auto g = load_graph(two);
  const auto n = in_neighbors(g, 2);
  CHECK(std::vector<NodeId>(n.begin(), n.end()) == std::vector<NodeId>{0, 1});
  CHECK(in_neighbors(g, 0).empty());

  const std::vector<Edge> cycle{{0, 1}, {1, 0}};
  const auto c = load_graph(cycle);
  REQUIRE(in_neighbors(c, 0).size() == 1);
  CHECK(in_neighbors(c, 0)[0] == 1);
  CHECK_THROWS_AS(in_neighbors(c, 5), std::out_of_range);
}

TEST_CASE("duplicates and self-loops are rejected with their position") {
  const std::vector<Edge> dup{{0, 1}, {0, 1}};
  try {
    load_graph(dup);
    FAIL("expected GraphError");
  } catch (const GraphError& e) {
    CHECK(e.position() == 1);
  }
  const std::vector<Edge> loop{{0, 1}, {1, 2}, {2, 2}};
  try {
    load_graph(loop);
    FAIL("expected GraphError");
  } catch (const GraphError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("random edge lists round-trip and degree sums match") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<NodeId> node(0, 19);
    std::set<std::pair<NodeId, NodeId>> want;
    std::vector<Edge> edges;
    for (int i = 0; i < 60; ++i) {
      const NodeId u = node(rng), v = node(rng);
      if (u != v && want.insert({u, v}).second) {
        edges.push_back({u, v});
      }
    }
    const auto g = Graph::from_edges(edges);
    std::size_t out_sum = 0, in_sum = 0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
      out_sum += g.out_neighbors(v).size();
      in_sum += g.in_neighbors(v).size();
      for (NodeId w : g.out_neighbors(v)) {
        const auto in = g.in_neighbors(w);
        CHECK(std::find(in.begin(), in.end(), v) != in.end());
      }
    }
    CHECK(out_sum == edges.size());
    CHECK(in_sum == edges.size());
    for (const auto& e : edges) {
      CHECK(g.has_edge(e.src, e.dst));
    }
    CHECK(g.edges().size() == edges.size());
  }
}

TEST_CASE("min_nodes keeps isolated trailing nodes") {
  const std::vector<Edge> edges{{0, 1}};
  const auto g = Graph::from_edges(edges, 5);
  CHECK(g.node_count() == 5);
  CHECK(g.in_neighbors(4).empty());
}
