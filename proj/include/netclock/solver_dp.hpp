#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "netclock/cascade.hpp"
#include "netclock/graph.hpp"
#include "netclock/improvement_model.hpp"
#include "netclock/likelihood.hpp"
#include "netclock/solution.hpp"

namespace netclock {

/// Largest horizon the exact solver accepts; beyond it the cubic table is
/// impractical and the greedy solver should be used.
inline constexpr Timestamp kDPHorizonLimit = 2000;

class HorizonLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct DPResult {
  ClockSolution solution;
  /// Table value of each interval of the returned clock: the best
  /// improvement of a partition of [1, end] finishing with that interval.
  std::vector<double> prefix_values;
};

/*
  Exact single-clock solver. best(s, e) is the largest improvement over all
  partitions of [1, e] whose last interval is [s, e]:
      best(1, e) = K(e)
      best(s, e) = max_b best(b, s-1) + score([b, s-1] -> [s, e])
  Ties prefer the predecessor with the smallest start, and the final answer
  prefers the last interval with the smallest start, so coarser clocks win
  among equals. The conditioned variant is obtained by passing a Condition.

  Throws HorizonLimitError when the horizon exceeds kDPHorizonLimit. An empty
  dataset yields the one-tick clock with improvement 0.
*/
DPResult solve_oc_dp_detailed(const Graph& g, const CascadeSet& cs, const ICParams& p,
                              NonActivationPolicy policy = NonActivationPolicy::contagious_only,
                              const Condition* condition = nullptr);

ClockSolution solve_oc_dp(const Graph& g, const CascadeSet& cs, const ICParams& p,
                          NonActivationPolicy policy = NonActivationPolicy::contagious_only,
                          const Condition* condition = nullptr);

/// max(0, current - prior)
double conditional_improvement(double current, double prior);

/// Interval improvement of v net of what it already secured elsewhere,
/// clamped at zero. prior must be >= 0.
double conditional_interval_improvement(const Graph& g, const CascadeSet& cs, NodeId v,
                                        CascadeId cascade, const Interval& current,
                                        const std::optional<Interval>& prev, const ICParams& p,
                                        double prior,
                                        NonActivationPolicy policy =
                                            NonActivationPolicy::contagious_only);

}  // namespace netclock
