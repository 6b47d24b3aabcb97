#pragma once

#include <cstddef>

#include "netclock/cascade.hpp"
#include "netclock/graph.hpp"
#include "netclock/likelihood.hpp"
#include "netclock/multiclock.hpp"
#include "netclock/solution.hpp"

namespace netclock {

inline constexpr Timestamp kOracleKocHorizonLimit = 8;
inline constexpr std::size_t kOracleKocMaxK = 3;

/// Exhaustive single-clock search using the direct likelihood evaluation.
/// Ties go to fewer cuts, then the lexicographically smallest cut set.
/// Throws std::length_error when the horizon exceeds the enumeration bound.
ClockSolution oracle_oc(const Graph& g, const CascadeSet& cs, const ICParams& p,
                        NonActivationPolicy policy = NonActivationPolicy::contagious_only,
                        Timestamp bound = kDefaultEnumerationBound);

/*
  Exhaustive k-clock search maximizing the multi-clock improvement over all
  k-subsets of clocks (fewer when 2^(T-1) < k). Requires T <= 8 and k <= 3;
  throws std::length_error otherwise and std::invalid_argument for k < 1.
*/
MultiClockSolution oracle_koc(const Graph& g, const CascadeSet& cs, std::size_t k,
                              const ICParams& p);

}  // namespace netclock
