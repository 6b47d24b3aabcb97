#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace netclock {

/// Discrete time tick. Internal timelines run 1..T.
using Timestamp = std::int64_t;

/// Closed interval [start, end] of original time ticks.
struct Interval {
  Timestamp start = 1;
  Timestamp end = 1;

  Interval() = default;
  Interval(Timestamp s, Timestamp e) : start(s), end(e) {
    if (s > e) {
      throw std::invalid_argument("interval start " + std::to_string(s) + " exceeds end " +
                                  std::to_string(e));
    }
  }

  bool contains(Timestamp t) const noexcept { return start <= t && t <= end; }
  Timestamp length() const noexcept { return end - start + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// `prev` immediately precedes `next` (prev.end + 1 == next.start).
inline bool adjacent(const Interval& prev, const Interval& next) noexcept {
  return prev.end + 1 == next.start;
}

}  // namespace netclock
