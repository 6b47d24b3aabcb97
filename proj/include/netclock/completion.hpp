#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"
#include "netclock/graph.hpp"
#include "netclock/simgen.hpp"

namespace netclock {

struct CompletionInstance {
  Cascade observed;
  std::vector<Activation> hidden;
  double drop_rate = 0.0;
};

/// Removes each activation except the first and the last independently with
/// probability drop_rate. Throws for cascades with fewer than 2 activations
/// or a drop rate outside [0, 1).
CompletionInstance hide(const Cascade& cascade, double drop_rate, Rng& rng);

struct CompletionOptions {
  /// Longest chain of inferred intermediates bridged for one observed
  /// activation.
  std::size_t max_chain = 4;
};

/*
  Outcome of a reconstruction. Inferred activations carry the clock step at
  which they were placed. Precision and recall compare node sets: with no
  hidden activations recall is 1 (and precision is 1 when nothing was
  inferred); an infeasible reconstruction scores 0 on all three.
*/
struct CompletionResult {
  bool feasible = false;
  std::vector<Activation> inferred;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/*
  Cascade forest reconstruction. Observed activations are remapped through
  the clock; those at the earliest step are roots at depth 0. Every other
  observed activation, in order of depth, is attached to an in-neighbor
  placed one level above it, or else through the shortest chain (at most
  max_chain links) of unplaced, unobserved intermediates ending at a node
  placed at the matching depth. Fails when some activation cannot be
  attached.
*/
CompletionResult complete(const Graph& g, const CompletionInstance& instance, const Clock& clock,
                          const CompletionOptions& options = {});

struct CompletionRow {
  double drop_rate = 0.0;
  double success_rate = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t cascades = 0;
};

/// Hide-and-recover averages per drop rate over all cascades with at least
/// two activations. Hidden sets depend only on (seed, drop rate position,
/// cascade position), so different clocks are scored on identical inputs.
std::vector<CompletionRow> completion_batch(const Graph& g, const CascadeSet& cs,
                                            const Clock& clock, std::span<const double> drop_rates,
                                            std::uint64_t seed, unsigned threads = 1,
                                            const CompletionOptions& options = {});

}  // namespace netclock
