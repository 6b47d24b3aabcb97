#include "netclock/solver_dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace netclock {

namespace {

bool ties_or_beats(double candidate, double incumbent) {
  const double tol = 1e-12 * std::max(1.0, std::abs(incumbent));
  return candidate >= incumbent - tol;
}

}  // namespace

DPResult solve_oc_dp_detailed(const Graph& g, const CascadeSet& cs, const ICParams& p,
                              NonActivationPolicy policy, const Condition* condition) {
  const Timestamp T = cs.horizon();
  if (T > kDPHorizonLimit) {
    throw HorizonLimitError("horizon " + std::to_string(T) + " exceeds the exact solver limit " +
                            std::to_string(kDPHorizonLimit) + "; use the greedy solver");
  }
  if (T == 0) {
    return {{clock_max(1), 0.0}, {0.0}};
  }
  const ImprovementModel model(g, cs, p, policy, condition);
  const auto n = static_cast<std::size_t>(T);
  // Row-major (start, end) tables, 1-based indices stored at [(s-1)*n + (e-1)].
  auto at = [n](Timestamp s, Timestamp e) {
    return static_cast<std::size_t>(s - 1) * n + static_cast<std::size_t>(e - 1);
  };
  const double minus_inf = -std::numeric_limits<double>::infinity();
  std::vector<double> best(n * n, minus_inf);
  std::vector<std::uint32_t> back(n * n, 0);

  for (Timestamp e = 1; e <= T; ++e) {
    best[at(1, e)] = model.interval_constant(e);
  }

  std::vector<std::uint32_t> count(model.slot_count(), 0);
  std::vector<std::uint32_t> touched;
  std::vector<double> by_end(n + 2, 0.0);

  for (Timestamp s = 2; s <= T; ++s) {
    for (auto w : touched) {
      count[w] = 0;
    }
    touched.clear();
    std::fill(by_end.begin(), by_end.end(), 0.0);
    double na_total = 0.0;

    for (Timestamp b = s - 1; b >= 1; --b) {
      for (auto u : model.sources_at(b)) {
        for (auto w : model.targets_of(u)) {
          const auto tw = model.slot_time(w);
          if (tw < s) {
            continue;
          }
          const std::uint32_t old_c = count[w];
          const std::uint32_t new_c = old_c + 1;
          if (old_c == 0) {
            touched.push_back(w);
          }
          count[w] = new_c;
          const double na_step = model.nonactivation_gain(new_c) - model.nonactivation_gain(old_c);
          na_total += na_step;
          if (tw <= T) {
            by_end[static_cast<std::size_t>(tw)] +=
                model.activation_gain(w, new_c) - model.activation_gain(w, old_c) - na_step;
          }
        }
      }
      const double prev_best = best[at(b, s - 1)];
      double prefix = 0.0;
      for (Timestamp e = s; e <= T; ++e) {
        prefix += by_end[static_cast<std::size_t>(e)];
        const double cand = prev_best + model.interval_constant(e) + na_total + prefix;
        auto& slot = best[at(s, e)];
        if (ties_or_beats(cand, slot)) {
          slot = cand;
          back[at(s, e)] = static_cast<std::uint32_t>(b);
        }
      }
    }
  }

  Timestamp last_start = 1;
  double top = best[at(1, T)];
  for (Timestamp s = 2; s <= T; ++s) {
    const double v = best[at(s, T)];
    if (v > top + 1e-12 * std::max(1.0, std::abs(top))) {
      top = v;
      last_start = s;
    }
  }

  std::vector<Timestamp> cuts;
  std::vector<double> prefix_values;
  Timestamp s = last_start;
  Timestamp e = T;
  while (true) {
    prefix_values.push_back(best[at(s, e)]);
    if (s == 1) {
      break;
    }
    cuts.push_back(s);
    const Timestamp b = back[at(s, e)];
    e = s - 1;
    s = b;
  }
  std::reverse(prefix_values.begin(), prefix_values.end());
  Clock clock(T, std::move(cuts));
  const double value = model.evaluate(clock);
  return {{std::move(clock), value}, std::move(prefix_values)};
}

ClockSolution solve_oc_dp(const Graph& g, const CascadeSet& cs, const ICParams& p,
                          NonActivationPolicy policy, const Condition* condition) {
  return solve_oc_dp_detailed(g, cs, p, policy, condition).solution;
}

double conditional_improvement(double current, double prior) {
  return std::max(0.0, current - prior);
}

double conditional_interval_improvement(const Graph& g, const CascadeSet& cs, NodeId v,
                                        CascadeId cascade, const Interval& current,
                                        const std::optional<Interval>& prev, const ICParams& p,
                                        double prior, NonActivationPolicy policy) {
  if (prior < 0.0) {
    throw std::invalid_argument("prior improvement must be non-negative");
  }
  return conditional_improvement(
      interval_improvement(g, cs, v, cascade, current, prev, p, policy), prior);
}

}  // namespace netclock
