#include "netclock/likelihood.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "netclock/improvement_model.hpp"

namespace netclock {

ICParams ICParams::make(double p_e, double p_n) {
  ICParams p{p_e, p_n};
  p.validate();
  return p;
}

void ICParams::validate() const {
  if (!(p_e > 0.0 && p_e < 1.0)) {
    throw std::invalid_argument("p_e must lie in (0,1), got " + std::to_string(p_e));
  }
  if (!(p_n > 0.0 && p_n < 1.0)) {
    throw std::invalid_argument("p_n must lie in (0,1), got " + std::to_string(p_n));
  }
}

std::string_view to_string(NonActivationPolicy policy) {
  switch (policy) {
    case NonActivationPolicy::none:
      return "none";
    case NonActivationPolicy::contagious_only:
      return "contagious_only";
    case NonActivationPolicy::full:
      return "full";
  }
  return "contagious_only";
}

NonActivationPolicy parse_policy(std::string_view text) {
  if (text == "none") {
    return NonActivationPolicy::none;
  }
  if (text == "contagious_only" || text == "contagious") {
    return NonActivationPolicy::contagious_only;
  }
  if (text == "full") {
    return NonActivationPolicy::full;
  }
  throw std::invalid_argument("unknown non-activation policy '" + std::string(text) + "'");
}

double activation_loglik(std::size_t contagious, const ICParams& p) {
  if (contagious == 0) {
    return std::log(p.p_e);
  }
  const double stay = (1.0 - p.p_e) * std::pow(1.0 - p.p_n, static_cast<double>(contagious));
  return std::log1p(-stay);
}

double nonactivation_loglik(std::size_t contagious, const ICParams& p) {
  return std::log1p(-p.p_e) + static_cast<double>(contagious) * std::log1p(-p.p_n);
}

namespace {

const Cascade& lookup(const CascadeSet& cs, CascadeId id) { return cs.by_id(id); }

std::size_t count_contagious(const Graph& g, const Cascade& x, NodeId v,
                             const std::optional<Interval>& prev) {
  if (!prev) {
    return 0;
  }
  std::size_t c = 0;
  for (NodeId u : g.in_neighbors(v)) {
    const auto tu = x.time_of(u);
    if (tu && prev->contains(*tu)) {
      ++c;
    }
  }
  return c;
}

void check_adjacent(const Interval& current, const std::optional<Interval>& prev) {
  if (prev && !adjacent(*prev, current)) {
    throw std::invalid_argument("interval [" + std::to_string(prev->start) + "," +
                                std::to_string(prev->end) + "] does not precede [" +
                                std::to_string(current.start) + "," +
                                std::to_string(current.end) + "]");
  }
}

void check_horizon(const CascadeSet& cs, const Clock& clock) {
  if (cs.horizon() != 0 && clock.horizon() != cs.horizon()) {
    throw std::invalid_argument("clock horizon " + std::to_string(clock.horizon()) +
                                " does not match data horizon " + std::to_string(cs.horizon()));
  }
}

// Term of node v (of cascade x) for interval `cur` following `prev`, in
// absolute log-likelihood units; nullopt when v contributes nothing.
std::optional<double> node_term(const Graph& g, const Cascade& x, NodeId v, const Interval& cur,
                                const std::optional<Interval>& prev, const ICParams& p,
                                NonActivationPolicy policy) {
  const auto tv = x.time_of(v);
  if (tv && *tv < cur.start) {
    return std::nullopt;
  }
  const std::size_t c = count_contagious(g, x, v, prev);
  if (tv && *tv <= cur.end) {
    return activation_loglik(c, p);
  }
  switch (policy) {
    case NonActivationPolicy::none:
      return std::nullopt;
    case NonActivationPolicy::contagious_only:
      if (c == 0) {
        return std::nullopt;
      }
      return nonactivation_loglik(c, p);
    case NonActivationPolicy::full:
      return nonactivation_loglik(c, p);
  }
  return std::nullopt;
}

}  // namespace

std::size_t contagious_neighbors(const Graph& g, const CascadeSet& cs, CascadeId cascade, NodeId v,
                                 const Interval& current, const std::optional<Interval>& prev) {
  check_adjacent(current, prev);
  return count_contagious(g, lookup(cs, cascade), v, prev);
}

double total_loglik(const Graph& g, const CascadeSet& cs, const Clock& clock, const ICParams& p,
                    NonActivationPolicy policy) {
  p.validate();
  check_horizon(cs, clock);
  if (cs.horizon() == 0) {
    return 0.0;
  }
  const auto intervals = clock.intervals();
  double total = 0.0;
  for (const auto& x : cs.cascades()) {
    std::optional<Interval> prev;
    for (const auto& iv : intervals) {
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (const auto term = node_term(g, x, v, iv, prev, p, policy)) {
          total += *term;
        }
      }
      prev = iv;
    }
  }
  return total;
}

double loglik_clock_max(const Graph& g, const CascadeSet& cs, const ICParams& p,
                        NonActivationPolicy policy) {
  p.validate();
  const auto acts = static_cast<double>(cs.total_activations());
  double ll = acts * std::log(p.p_e);
  if (policy == NonActivationPolicy::full) {
    const double pairs =
        static_cast<double>(cs.cascade_count()) * static_cast<double>(g.node_count());
    ll += (pairs - acts) * std::log1p(-p.p_e);
  }
  return ll;
}

double improvement(const Graph& g, const CascadeSet& cs, const Clock& clock, const ICParams& p,
                   NonActivationPolicy policy) {
  check_horizon(cs, clock);
  if (cs.horizon() == 0) {
    return 0.0;
  }
  if (clock.boundaries().empty()) {
    return 0.0;
  }
  return total_loglik(g, cs, clock, p, policy) -
         total_loglik(g, cs, clock_max(cs.horizon()), p, policy);
}

double interval_improvement(const Graph& g, const CascadeSet& cs, NodeId v, CascadeId cascade,
                            const Interval& current, const std::optional<Interval>& prev,
                            const ICParams& p, NonActivationPolicy policy) {
  p.validate();
  check_adjacent(current, prev);
  if (v >= g.node_count()) {
    throw std::out_of_range("node " + std::to_string(v) + " out of range");
  }
  const Cascade& x = lookup(cs, cascade);
  const auto term = node_term(g, x, v, current, prev, p, policy);
  if (!term) {
    return 0.0;
  }
  const auto tv = x.time_of(v);
  if (tv && *tv <= current.end) {
    return *term - std::log(p.p_e);
  }
  if (policy == NonActivationPolicy::full && !tv && current.end == cs.horizon()) {
    return *term - std::log1p(-p.p_e);
  }
  return *term;
}

double total_interval_improvement(const Graph& g, const CascadeSet& cs, const Interval& current,
                                  const std::optional<Interval>& prev, const ICParams& p,
                                  NonActivationPolicy policy) {
  check_adjacent(current, prev);
  double total = 0.0;
  for (const auto& x : cs.cascades()) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      total += interval_improvement(g, cs, v, x.id(), current, prev, p, policy);
    }
  }
  return total;
}

double delta_for_cut(const Graph& g, const CascadeSet& cs, const Clock& clock, Timestamp t,
                     const ICParams& p, NonActivationPolicy policy) {
  check_horizon(cs, clock);
  const ImprovementModel model(g, cs, p, policy);
  return model.delta_for_cut(clock, t);
}

}  // namespace netclock
