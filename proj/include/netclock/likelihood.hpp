#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"
#include "netclock/graph.hpp"

namespace netclock {

/// Independent cascade parameters: spontaneous (p_e) and neighbor (p_n)
/// activation probabilities, both strictly inside (0,1).
struct ICParams {
  double p_e = 0.001;
  double p_n = 0.1;

  /// Throws std::invalid_argument unless 0 < p_e < 1 and 0 < p_n < 1.
  static ICParams make(double p_e, double p_n);
  void validate() const;
  /// The model assumes p_e << p_n; callers should warn when this is false.
  bool spontaneous_dominates() const noexcept { return p_e >= p_n; }
};

/*
  Which non-activation terms enter the log-likelihood:
    none            - activation terms only
    contagious_only - nodes that had a contagious in-neighbor but did not
                      (yet) activate
    full            - every not-yet-active node in every interval
*/
enum class NonActivationPolicy { none, contagious_only, full };

std::string_view to_string(NonActivationPolicy policy);
/// Accepts "none", "contagious_only" (or "contagious"), "full".
NonActivationPolicy parse_policy(std::string_view text);

/// ln(1 - (1-p_e)(1-p_n)^c); exactly ln(p_e) for c = 0.
double activation_loglik(std::size_t contagious, const ICParams& p);
/// ln((1-p_e)(1-p_n)^c)
double nonactivation_loglik(std::size_t contagious, const ICParams& p);

/// |N(v) ∩ A(X, prev)|, 0 without a preceding interval. Throws when `prev`
/// does not immediately precede `current`.
std::size_t contagious_neighbors(const Graph& g, const CascadeSet& cs, CascadeId cascade, NodeId v,
                                 const Interval& current, const std::optional<Interval>& prev);

/// LL(X | clock), summed over cascades and clock intervals, natural log.
double total_loglik(const Graph& g, const CascadeSet& cs, const Clock& clock, const ICParams& p,
                    NonActivationPolicy policy = NonActivationPolicy::contagious_only);

/// LL(X | clock_max) in closed form: every activation spontaneous, plus the
/// single spontaneous non-activation of every other (cascade, node) pair
/// under `full`.
double loglik_clock_max(const Graph& g, const CascadeSet& cs, const ICParams& p,
                        NonActivationPolicy policy = NonActivationPolicy::contagious_only);

/// LL(X | clock) - LL(X | clock_max).
double improvement(const Graph& g, const CascadeSet& cs, const Clock& clock, const ICParams& p,
                   NonActivationPolicy policy = NonActivationPolicy::contagious_only);

/*
  Improvement contributed by node v of one cascade over `current` given the
  preceding interval (nullopt for the first interval):
    X(v) in current      -> LL_act(c) - ln p_e
    X(v) after current   -> non-activation term under `policy`
    X(v) before current  -> 0
  Nodes outside the cascade count as "after". Under `full`, the term of a
  node outside the cascade in an interval ending at T is taken relative to
  the single spontaneous non-activation it has under clock_max, so that
  summing over consecutive interval pairs reproduces improvement() for
  every policy.
*/
double interval_improvement(const Graph& g, const CascadeSet& cs, NodeId v, CascadeId cascade,
                            const Interval& current, const std::optional<Interval>& prev,
                            const ICParams& p,
                            NonActivationPolicy policy = NonActivationPolicy::contagious_only);

/// Sum of interval_improvement over all cascades and nodes.
double total_interval_improvement(const Graph& g, const CascadeSet& cs, const Interval& current,
                                  const std::optional<Interval>& prev, const ICParams& p,
                                  NonActivationPolicy policy = NonActivationPolicy::contagious_only);

/// total_loglik(clock + cut t) - total_loglik(clock), evaluated locally.
/// Throws when t is already a cut or lies outside [2, T].
double delta_for_cut(const Graph& g, const CascadeSet& cs, const Clock& clock, Timestamp t,
                     const ICParams& p,
                     NonActivationPolicy policy = NonActivationPolicy::contagious_only);

}  // namespace netclock
