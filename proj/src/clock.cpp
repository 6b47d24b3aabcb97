#include "netclock/clock.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace netclock {

Clock::Clock(Timestamp horizon, std::vector<Timestamp> boundaries)
    : horizon_(horizon), boundaries_(std::move(boundaries)) {
  if (horizon_ < 1) {
    throw std::invalid_argument("clock horizon must be >= 1, got " + std::to_string(horizon_));
  }
  std::sort(boundaries_.begin(), boundaries_.end());
  boundaries_.erase(std::unique(boundaries_.begin(), boundaries_.end()), boundaries_.end());
  if (!boundaries_.empty() && (boundaries_.front() < 2 || boundaries_.back() > horizon_)) {
    throw std::invalid_argument("clock cut outside [2," + std::to_string(horizon_) + "]");
  }
}

void Clock::check_time(Timestamp t) const {
  if (t < 1 || t > horizon_) {
    throw std::out_of_range("time " + std::to_string(t) + " outside [1," +
                            std::to_string(horizon_) + "]");
  }
}

Interval Clock::interval(std::size_t i) const {
  if (i >= interval_count()) {
    throw std::out_of_range("interval index " + std::to_string(i) + " out of range");
  }
  const Timestamp start = i == 0 ? 1 : boundaries_[i - 1];
  const Timestamp end = i == boundaries_.size() ? horizon_ : boundaries_[i] - 1;
  return {start, end};
}

std::vector<Interval> Clock::intervals() const {
  std::vector<Interval> out;
  out.reserve(interval_count());
  for (std::size_t i = 0; i < interval_count(); ++i) {
    out.push_back(interval(i));
  }
  return out;
}

std::size_t Clock::remap(Timestamp t) const {
  check_time(t);
  return static_cast<std::size_t>(std::upper_bound(boundaries_.begin(), boundaries_.end(), t) -
                                  boundaries_.begin()) +
         1;
}

Interval Clock::interval_of(Timestamp t) const { return interval(remap(t) - 1); }

bool Clock::is_boundary(Timestamp t) const {
  return std::binary_search(boundaries_.begin(), boundaries_.end(), t);
}

Clock Clock::with_cut(Timestamp t) const {
  auto b = boundaries_;
  b.push_back(t);
  return Clock(horizon_, std::move(b));
}

Clock Clock::with_cuts(std::span<const Timestamp> cuts) const {
  auto b = boundaries_;
  b.insert(b.end(), cuts.begin(), cuts.end());
  return Clock(horizon_, std::move(b));
}

Clock clock_max(Timestamp horizon) { return Clock(horizon, {}); }

Clock clock_min(Timestamp horizon) {
  if (horizon < 1) {
    throw std::invalid_argument("clock horizon must be >= 1");
  }
  std::vector<Timestamp> b;
  for (Timestamp t = 2; t <= horizon; ++t) {
    b.push_back(t);
  }
  return Clock(horizon, std::move(b));
}

Clock homogeneous_clock(Timestamp horizon, Timestamp width) {
  if (width < 1) {
    throw std::invalid_argument("window width must be >= 1");
  }
  if (horizon < 1) {
    throw std::invalid_argument("clock horizon must be >= 1");
  }
  std::vector<Timestamp> b;
  for (Timestamp t = 1 + width; t <= horizon; t += width) {
    b.push_back(t);
  }
  return Clock(horizon, std::move(b));
}

Interval interval_of(const Clock& c, Timestamp t) { return c.interval_of(t); }

std::size_t remap_time(const Clock& c, Timestamp t) { return c.remap(t); }

void for_each_clock(Timestamp horizon, const std::function<void(const Clock&)>& visit,
                    Timestamp bound) {
  if (horizon < 1) {
    throw std::invalid_argument("clock horizon must be >= 1");
  }
  if (horizon > bound) {
    throw std::length_error("clock enumeration refused: T=" + std::to_string(horizon) +
                            " exceeds bound " + std::to_string(bound));
  }
  const auto slots = static_cast<std::size_t>(horizon - 1);
  // Combinations of k cut positions out of {2..T}, lexicographic within k.
  for (std::size_t k = 0; k <= slots; ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
      idx[i] = i;
    }
    while (true) {
      std::vector<Timestamp> cuts(k);
      for (std::size_t i = 0; i < k; ++i) {
        cuts[i] = static_cast<Timestamp>(idx[i]) + 2;
      }
      visit(Clock(horizon, std::move(cuts)));
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == slots - k + (i - 1)) {
        --i;
      }
      if (i == 0) {
        break;
      }
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) {
        idx[j] = idx[j - 1] + 1;
      }
    }
  }
}

std::vector<Clock> enumerate_clocks(Timestamp horizon, Timestamp bound) {
  std::vector<Clock> out;
  for_each_clock(horizon, [&](const Clock& c) { out.push_back(c); }, bound);
  return out;
}

}  // namespace netclock
