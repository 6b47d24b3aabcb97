#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"
#include "netclock/graph.hpp"
#include "netclock/likelihood.hpp"

namespace netclock {

/// Per-activation improvement already secured by previously selected clocks
/// (multi-clock greedy). Indexed by global activation index; entries >= 0.
struct Condition {
  std::vector<double> prior;
};

struct CutDelta {
  Timestamp position;
  double delta;
};

/*
  Precomputed improvement evaluator shared by the solvers.

  Every (cascade, node) pair that can receive influence gets a "slot": one per
  activation (slot id == global activation index) plus, when non-activation
  terms matter, one per out-neighbor of an activation that never joins the
  cascade. For each activation u we keep the slots w with X(w) > X(u) (or w
  outside the cascade); edges into earlier or simultaneous activations can
  never be contagious and are dropped.

  The score of an interval transition prev -> cur is
      K(cur.end) + sum over slots w reached from A(X, prev) of
          gain_act(w, c)   if X(w) in cur
          gain_na(c)       if X(w) after cur
  where c counts w's in-neighbors active in prev. gain_act(w, 0) and
  gain_na(0) are zero, so only reached slots contribute. K carries the
  spontaneous non-activation mass under the `full` policy.

  With a Condition the activation gain becomes max(0, gain - prior) and
  non-activation terms vanish (they are never positive, so the clamp zeroes
  them).

  Not thread-safe for concurrent calls on the same instance.
*/
class ImprovementModel {
 public:
  ImprovementModel(const Graph& g, const CascadeSet& cs, const ICParams& p,
                   NonActivationPolicy policy, const Condition* condition = nullptr);

  Timestamp horizon() const noexcept { return horizon_; }
  bool conditioned() const noexcept { return conditioned_; }
  NonActivationPolicy policy() const noexcept { return policy_; }

  /// Score of the transition prev -> cur (prev nullopt for the first interval).
  double pair_score(const std::optional<Interval>& prev, const Interval& cur) const;
  /// Sum of pair scores over the clock: the clock's improvement.
  double evaluate(const Clock& clock) const;
  /// Exact change of evaluate() when cut t is added.
  double delta_for_cut(const Clock& clock, Timestamp t) const;
  /// Exact delta for every candidate cut (ticks carrying activations that are
  /// not already cuts), in one pass per clock interval.
  std::vector<CutDelta> sweep_deltas(const Clock& clock) const;

  // Views used by the DP.
  std::span<const std::uint32_t> sources_between(Timestamp from, Timestamp to) const;
  std::span<const std::uint32_t> sources_at(Timestamp t) const { return sources_between(t, t); }
  std::span<const std::uint32_t> targets_of(std::uint32_t activation) const {
    return {targets_.data() + target_offsets_[activation],
            target_offsets_[activation + 1] - target_offsets_[activation]};
  }
  Timestamp slot_time(std::uint32_t slot) const noexcept { return slot_time_[slot]; }
  std::size_t slot_count() const noexcept { return slot_time_.size(); }
  std::size_t activation_count() const noexcept { return target_offsets_.size() - 1; }

  double activation_gain(std::uint32_t slot, std::size_t contagious) const noexcept {
    const double g = act_gain_[contagious];
    if (!conditioned_) {
      return g;
    }
    const double d = g - prior_[slot];
    return d > 0.0 ? d : 0.0;
  }
  double nonactivation_gain(std::size_t contagious) const noexcept { return na_gain_[contagious]; }
  double interval_constant(Timestamp end) const noexcept;

 private:
  double pair_score_impl(const std::optional<Interval>& prev, const Interval& cur,
                         std::vector<std::uint32_t>& count,
                         std::vector<std::uint32_t>& touched) const;

  Timestamp horizon_ = 0;
  NonActivationPolicy policy_;
  bool conditioned_ = false;

  std::vector<std::size_t> time_offsets_;  // activations with time t at [off[t], off[t+1])
  std::vector<std::uint32_t> by_time_;     // global activation ids sorted by time
  std::vector<std::size_t> target_offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<Timestamp> slot_time_;
  std::vector<double> prior_;

  std::vector<double> act_gain_;
  std::vector<double> na_gain_;
  std::vector<std::size_t> cumulative_;  // activations with time <= t
  double spontaneous_na_ = 0.0;          // ln(1 - p_e), used by `full`
  double population_ = 0.0;              // cascades * |V|
};

}  // namespace netclock
