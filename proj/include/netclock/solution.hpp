#pragma once

#include "netclock/clock.hpp"

namespace netclock {

/// A single clock together with its improvement over the one-interval clock.
struct ClockSolution {
  Clock clock;
  double improvement = 0.0;
};

}  // namespace netclock
