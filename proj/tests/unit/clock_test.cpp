#include <doctest.h>

#include <set>

#include "netclock/clock.hpp"

using namespace netclock;

namespace {

std::vector<Interval> iv(std::initializer_list<std::pair<Timestamp, Timestamp>> xs) {
  std::vector<Interval> out;
  for (auto [s, e] : xs) {
    out.emplace_back(s, e);
  }
  return out;
}

}  // namespace

TEST_CASE("extreme clocks") {
  CHECK(clock_max(6).intervals() == iv({{1, 6}}));
  CHECK(clock_min(3).intervals() == iv({{1, 1}, {2, 2}, {3, 3}}));
  CHECK(clock_max(1) == clock_min(1));
  CHECK_THROWS_AS(clock_max(0), std::invalid_argument);
  CHECK_THROWS_AS(clock_min(0), std::invalid_argument);
}

TEST_CASE("homogeneous windows") {
  CHECK(homogeneous_clock(6, 2).intervals() == iv({{1, 2}, {3, 4}, {5, 6}}));
  CHECK(homogeneous_clock(5, 2).intervals() == iv({{1, 2}, {3, 4}, {5, 5}}));
  CHECK(homogeneous_clock(4, 10) == clock_max(4));
  CHECK(homogeneous_clock(7, 1) == clock_min(7));
}

TEST_CASE("interval lookup and remapping") {
  const Clock c(6, {2, 6});
  CHECK(c.intervals() == iv({{1, 1}, {2, 5}, {6, 6}}));
  CHECK(interval_of(c, 3) == Interval{2, 5});
  CHECK(remap_time(c, 2) == 2);
  CHECK(remap_time(c, 5) == 2);
  CHECK(interval_of(clock_max(6), 4) == Interval{1, 6});
  CHECK(interval_of(clock_min(6), 4) == Interval{4, 4});
  for (Timestamp t = 1; t <= 6; ++t) {
    CHECK(remap_time(clock_min(6), t) == static_cast<std::size_t>(t));
    CHECK(remap_time(clock_max(6), t) == 1);
  }
  CHECK_THROWS_AS(interval_of(c, 0), std::out_of_range);
  CHECK_THROWS_AS(remap_time(c, 7), std::out_of_range);
}

TEST_CASE("cuts are validated, sorted and deduplicated") {
  const Clock c(9, {5, 3, 5});
  CHECK(std::vector<Timestamp>(c.boundaries().begin(), c.boundaries().end()) ==
        std::vector<Timestamp>{3, 5});
  CHECK_THROWS_AS(Clock(5, {1}), std::invalid_argument);
  CHECK_THROWS_AS(Clock(5, {6}), std::invalid_argument);
  CHECK(c.with_cut(7).interval_count() == 4);
  CHECK(c.is_boundary(5));
  CHECK_FALSE(c.is_boundary(4));
}

TEST_CASE("intervals are contiguous and remap is monotone and onto") {
  for (Timestamp T = 1; T <= 9; ++T) {
    for (const auto& c : enumerate_clocks(T)) {
      const auto ivs = c.intervals();
      CHECK(ivs.front().start == 1);
      CHECK(ivs.back().end == T);
      CHECK(ivs.size() == c.boundaries().size() + 1);
      for (std::size_t i = 1; i < ivs.size(); ++i) {
        CHECK(ivs[i].start == ivs[i - 1].end + 1);
      }
      std::set<std::size_t> seen;
      std::size_t prev = 0;
      for (Timestamp t = 1; t <= T; ++t) {
        const auto s = c.remap(t);
        CHECK(s >= prev);
        prev = s;
        seen.insert(s);
      }
      CHECK(seen.size() == c.interval_count());
    }
  }
}

TEST_CASE("enumeration yields 2^(T-1) distinct clocks in order") {
  CHECK(enumerate_clocks(1).size() == 1);
  CHECK(enumerate_clocks(4).size() == 8);
  const auto three = enumerate_clocks(3);
  REQUIRE(three.size() == 4);
  CHECK(three[0] == Clock(3, {}));
  CHECK(three[1] == Clock(3, {2}));
  CHECK(three[2] == Clock(3, {3}));
  CHECK(three[3] == Clock(3, {2, 3}));
  for (Timestamp T = 1; T <= 12; ++T) {
    std::set<std::vector<Timestamp>> distinct;
    std::size_t count = 0;
    std::size_t last_cuts = 0;
    for_each_clock(T, [&](const Clock& c) {
      ++count;
      CHECK(c.boundaries().size() >= last_cuts);
      last_cuts = c.boundaries().size();
      distinct.insert({c.boundaries().begin(), c.boundaries().end()});
    });
    CHECK(count == (std::size_t{1} << (T - 1)));
    CHECK(distinct.size() == count);
  }
  CHECK_THROWS_AS(enumerate_clocks(21), std::length_error);
}
