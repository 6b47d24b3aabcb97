#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"
#include "netclock/graph.hpp"
#include "netclock/improvement_model.hpp"
#include "netclock/likelihood.hpp"

namespace netclock {

enum class InnerSolver { dp, greedy };

std::string_view to_string(InnerSolver inner);
InnerSolver parse_inner_solver(std::string_view text);

/*
  Per-activation gains of a node's own activation terms under a clock:
      a(v, X, clock) = LL_act(c) - ln p_e
  where c counts in-neighbors of v active in the interval immediately before
  the one holding X(v). Indexed by global activation index.
*/
class ActivationGains {
 public:
  ActivationGains(const Graph& g, const CascadeSet& cs, const ICParams& p);

  std::vector<double> evaluate(const Clock& clock) const;
  /// Sum of gains per graph node.
  std::vector<double> node_scores(const Clock& clock) const;
  std::vector<double> node_scores(const std::vector<double>& activation_gains) const;

  std::size_t activation_count() const noexcept { return activation_node_.size(); }
  std::size_t node_count() const noexcept { return node_count_; }

 private:
  Timestamp horizon_;
  std::size_t node_count_;
  std::vector<NodeId> activation_node_;
  std::vector<Timestamp> activation_time_;
  std::vector<std::size_t> influencer_offsets_;
  std::vector<Timestamp> influencer_times_;  // times of earlier in-neighbors in the cascade
  std::vector<double> gain_;                 // LL_act(c) - ln p_e, by c
};

struct MultiClockSolution {
  ClockSet clocks;
  ClockAssignment assignment;
  /// Marginal multi-clock improvement contributed by each clock, in order.
  std::vector<double> per_clock_gain;
  double total = 0.0;
};

/// Sum over nodes of the best per-node score among the clocks.
/// Throws std::invalid_argument for an empty clock set.
double multi_improvement(const Graph& g, const CascadeSet& cs, const ClockSet& clocks,
                         const ICParams& p);

/// Each node mapped to its best clock, ties to the lowest index.
ClockAssignment assign_nodes(const Graph& g, const CascadeSet& cs, const ClockSet& clocks,
                             const ICParams& p);

/*
  Greedy k-clock selection. The first round runs the single-clock solver
  unchanged; later rounds run it conditioned on the gain each activation
  already obtains under its node's assigned clock. Stops early when a round
  adds less than 1e-9. Throws std::invalid_argument for k < 1.
*/
MultiClockSolution solve_koc(const Graph& g, const CascadeSet& cs, std::size_t k,
                             const ICParams& p,
                             NonActivationPolicy policy = NonActivationPolicy::contagious_only,
                             InnerSolver inner = InnerSolver::dp);

/// Builds a solution record (assignment, marginals, total) for a fixed clock
/// sequence.
MultiClockSolution describe_clock_set(const Graph& g, const CascadeSet& cs, const ClockSet& clocks,
                                      const ICParams& p);

}  // namespace netclock
