#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "netclock/timeline.hpp"

namespace netclock {

/*
  A network clock: a partition of [1, T] into contiguous intervals. The
  canonical form is the sorted set of cut positions B within {2..T}; a cut at
  b separates tick b-1 from tick b. Intervals are derived from the cuts.
*/
class Clock {
 public:
  Clock() = default;
  /// Throws std::invalid_argument when T < 1 or a cut lies outside [2, T].
  /// Cuts are sorted and deduplicated.
  Clock(Timestamp horizon, std::vector<Timestamp> boundaries);

  Timestamp horizon() const noexcept { return horizon_; }
  std::span<const Timestamp> boundaries() const noexcept { return boundaries_; }
  std::size_t interval_count() const noexcept { return boundaries_.size() + 1; }

  /// 0-based i-th interval.
  Interval interval(std::size_t i) const;
  std::vector<Interval> intervals() const;

  /// The unique interval containing t.
  Interval interval_of(Timestamp t) const;
  /// 1-based index of the interval containing t.
  std::size_t remap(Timestamp t) const;

  bool is_boundary(Timestamp t) const;
  Clock with_cut(Timestamp t) const;
  Clock with_cuts(std::span<const Timestamp> cuts) const;

  friend bool operator==(const Clock&, const Clock&) = default;

 private:
  void check_time(Timestamp t) const;

  Timestamp horizon_ = 1;
  std::vector<Timestamp> boundaries_;
};

using ClockSet = std::vector<Clock>;
/// Node id -> index into a ClockSet.
using ClockAssignment = std::vector<std::uint32_t>;

/// {[1,T]}
Clock clock_max(Timestamp horizon);
/// {[1,1],...,[T,T]}
Clock clock_min(Timestamp horizon);
/// Fixed windows of `width` ticks; the last one may be shorter.
Clock homogeneous_clock(Timestamp horizon, Timestamp width);

Interval interval_of(const Clock& c, Timestamp t);
std::size_t remap_time(const Clock& c, Timestamp t);

inline constexpr Timestamp kDefaultEnumerationBound = 20;

/// Visits all 2^(T-1) clocks ordered by number of cuts, then lexicographically
/// by cut set. Throws std::length_error when T exceeds `bound`.
void for_each_clock(Timestamp horizon, const std::function<void(const Clock&)>& visit,
                    Timestamp bound = kDefaultEnumerationBound);
std::vector<Clock> enumerate_clocks(Timestamp horizon, Timestamp bound = kDefaultEnumerationBound);

}  // namespace netclock
