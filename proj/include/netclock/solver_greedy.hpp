#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "netclock/cascade.hpp"
#include "netclock/graph.hpp"
#include "netclock/improvement_model.hpp"
#include "netclock/likelihood.hpp"
#include "netclock/solution.hpp"

namespace netclock {

/// A graph edge (u, v) inside one cascade with X(u) < X(v).
struct ActiveEdge {
  CascadeId cascade;
  Activation source;
  Activation target;
  /// Cuts b of the reference clock with X(u) < b <= X(v).
  std::size_t cut_count = 0;
};

/// All active edges, ordered by cascade, then source, then target node.
/// cut_count is measured against `clock` (the one-interval clock when absent).
std::vector<ActiveEdge> build_active_edges(const Graph& g, const CascadeSet& cs);
std::vector<ActiveEdge> build_active_edges(const Graph& g, const CascadeSet& cs, const Clock& clock);

/*
  A scored cut position. An active edge spans position b when
  X(u) < b <= X(v). `reach` is the earliest source time among edges spanning
  at or after the position (the position itself when nothing spans it), so
  two candidates p < q share an edge exactly when q.reach < p.position.
*/
struct CutCandidate {
  Timestamp position = 0;
  double score = 0.0;
  Timestamp reach = 0;
  std::size_t spanning_edges = 0;
};

/// Accepted, pairwise edge-disjoint cut candidates of one sweep.
class CutSelection {
 public:
  static bool conflict(const CutCandidate& a, const CutCandidate& b);

  /// Accepts a candidate that conflicts with nothing; otherwise it replaces
  /// the conflicting members only when its score exceeds their total.
  /// Returns whether the candidate was accepted.
  bool add_or_drop(const CutCandidate& candidate);

  bool empty() const noexcept { return accepted_.empty(); }
  std::size_t size() const noexcept { return accepted_.size(); }
  double total_score() const noexcept { return total_; }
  std::vector<Timestamp> positions() const;
  std::vector<CutCandidate> candidates() const;

 private:
  std::map<Timestamp, CutCandidate> accepted_;
  double total_ = 0.0;
};

struct GreedyStats {
  std::size_t sweeps = 0;
  std::size_t candidates_scored = 0;
  std::size_t cuts_accepted = 0;
  /// Sweeps whose batch did not raise the improvement and fell back to the
  /// single best cut.
  std::size_t fallbacks = 0;
};

struct GreedyResult {
  ClockSolution solution;
  GreedyStats stats;
};

/*
  Sweep-line greedy starting from the one-interval clock. Each sweep scores
  every candidate cut exactly against the clock frozen at the start of the
  sweep, feeds positive ones in increasing position through add_or_drop and
  inserts the surviving batch. If the batch fails to raise the improvement
  (scores go stale once neighbors land) the single best cut is inserted
  instead. Stops when no cut has a positive delta.
*/
GreedyResult solve_oc_greedy_detailed(
    const Graph& g, const CascadeSet& cs, const ICParams& p,
    NonActivationPolicy policy = NonActivationPolicy::contagious_only,
    const Condition* condition = nullptr);

ClockSolution solve_oc_greedy(const Graph& g, const CascadeSet& cs, const ICParams& p,
                              NonActivationPolicy policy = NonActivationPolicy::contagious_only,
                              const Condition* condition = nullptr);

}  // namespace netclock
