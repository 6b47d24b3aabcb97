#include <doctest.h>

#include <algorithm>
#include <random>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"
#include "netclock/io.hpp"
#include "test_support.hpp"

using namespace netclock;

namespace {

Graph nodes_only(std::size_t n) { return Graph::from_edges({}, n); }

}  // namespace

TEST_CASE("times are normalized so the first activation is at 1") {
  const auto g = nodes_only(7);
  const std::vector<ActivationRecord> recs{{0, 5, 3}, {0, 6, 4}};
  const auto cs = load_cascades(recs, g);
  CHECK(cs.horizon() == 2);
  CHECK(cs.cascade(0).time_of(5) == 1);
  CHECK(cs.cascade(0).time_of(6) == 2);
  CHECK(cs.external_time(1) == 3);
  CHECK(cs.total_activations() == 2);
}

TEST_CASE("a node repeated within one cascade is rejected") {
  const auto g = nodes_only(7);
  const std::vector<ActivationRecord> recs{{0, 5, 1}, {0, 5, 2}};
  CHECK_THROWS_WITH_AS(load_cascades(recs, g), "node 5 repeated in cascade 0", CascadeError);
}

TEST_CASE("the same node may appear in different cascades") {
  const auto g = nodes_only(7);
  const std::vector<ActivationRecord> recs{{0, 5, 1}, {1, 5, 1}};
  const auto cs = load_cascades(recs, g);
  CHECK(cs.cascade_count() == 2);
  CHECK(cs.by_id(1).time_of(5) == 1);
}

TEST_CASE("unknown nodes and non-positive times are rejected") {
  const auto g = nodes_only(3);
  const std::vector<ActivationRecord> bad_node{{0, 9, 1}};
  CHECK_THROWS_AS(load_cascades(bad_node, g), CascadeError);
  const std::vector<ActivationRecord> bad_time{{0, 1, 0}};
  CHECK_THROWS_AS(load_cascades(bad_time, g), CascadeError);
}

TEST_CASE("compress_timeline drops empty ticks and keeps the mapping") {
  const auto g = nodes_only(4);
  const std::vector<ActivationRecord> recs{{0, 0, 1}, {0, 1, 5}, {0, 2, 9}};
  const auto cs = load_cascades(recs, g);
  const auto c = compress_timeline(cs);
  CHECK(c.horizon() == 3);
  CHECK(c.cascade(0).time_of(1) == 2);
  CHECK(c.external_time(2) == 5);
  CHECK(c.external_time(3) == 9);
  CHECK(c.internal_ceil(6) == 3);
  CHECK(c.internal_ceil(5) == 2);

  const std::vector<ActivationRecord> dense{{0, 0, 1}, {0, 1, 2}, {0, 2, 3}};
  const auto d = load_cascades(dense, g);
  CHECK(compress_timeline(d) == d);

  const CascadeSet empty = load_cascades({}, g);
  CHECK(compress_timeline(empty).horizon() == 0);
}

TEST_CASE("decompressed clock boundaries land on original times") {
  std::mt19937_64 rng(11);
  const auto g = nodes_only(6);
  for (int trial = 0; trial < 30; ++trial) {
    std::uniform_int_distribution<Timestamp> t(1, 40);
    std::vector<ActivationRecord> recs;
    for (NodeId v = 0; v < 6; ++v) {
      recs.push_back({0, v, t(rng)});
    }
    const auto raw = load_cascades(recs, g);
    const auto c = compress_timeline(raw);
    const auto clock = testing_support::random_clock(rng, c.horizon());
    for (auto b : clock.boundaries()) {
      const Timestamp ext = c.external_time(b);
      bool seen = false;
      for (const auto& r : recs) {
        seen = seen || r.time == ext;
      }
      CHECK(seen);
      CHECK(c.internal_ceil(ext) == b);
    }
  }
}

TEST_CASE("active_at unions activations over an interval") {
  const auto g = nodes_only(7);
  const std::vector<ActivationRecord> recs{{0, 5, 1}, {0, 6, 2}};
  const auto cs = load_cascades(recs, g);
  CHECK(active_at(cs, 0, Interval{1, 2}) == std::vector<NodeId>{5, 6});
  CHECK(active_at(cs, 0, Interval{2, 2}) == std::vector<NodeId>{6});
  CHECK(active_at(cs, 0, Interval{3, 3}).empty());
  CHECK_THROWS_AS(active_at(cs, 4, Interval{1, 1}), std::out_of_range);
}

TEST_CASE("active_at over a clock partitions each cascade") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing_support::random_instance(rng);
    const auto clock = testing_support::random_clock(rng, inst.cascades.horizon());
    for (const auto& x : inst.cascades.cascades()) {
      std::vector<NodeId> all;
      for (const auto& iv : clock.intervals()) {
        const auto part = active_at(inst.cascades, x.id(), iv);
        all.insert(all.end(), part.begin(), part.end());
      }
      std::sort(all.begin(), all.end());
      std::vector<NodeId> want;
      for (const auto& a : x.activations()) {
        want.push_back(a.node);
      }
      std::sort(want.begin(), want.end());
      CHECK(all == want);
    }
  }
}

TEST_CASE("activations are sorted by time then node") {
  const Cascade c(3, {{4, 2}, {1, 2}, {9, 1}});
  const auto a = c.activations();
  CHECK(a[0] == Activation{9, 1});
  CHECK(a[1] == Activation{1, 2});
  CHECK(a[2] == Activation{4, 2});
  CHECK(c.at(2).size() == 2);
}

TEST_CASE("serialize then load reproduces the cascade set") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing_support::random_instance(rng);
    const auto raw = load_cascades(inst.cascades.records(), inst.graph);
    std::stringstream ss;
    write_cascades(ss, raw);
    NodeMap nodes;
    for (NodeId v = 0; v < inst.graph.node_count(); ++v) {
      nodes.intern(std::to_string(v));
    }
    const auto recs = read_cascade_records(ss, nodes);
    CHECK(load_cascades(recs, inst.graph) == raw);
  }
}
