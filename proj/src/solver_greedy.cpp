#include "netclock/solver_greedy.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace netclock {

namespace {

constexpr double kPositiveDelta = 1e-9;

std::size_t cuts_between(const Clock& clock, Timestamp from_exclusive, Timestamp to_inclusive) {
  const auto b = clock.boundaries();
  const auto lo = std::upper_bound(b.begin(), b.end(), from_exclusive);
  const auto hi = std::upper_bound(b.begin(), b.end(), to_inclusive);
  return static_cast<std::size_t>(hi - lo);
}

// Spanning counts and reach per position, built from the model's
// activation-to-activation targets.
struct SpanIndex {
  std::vector<Timestamp> reach;
  std::vector<std::size_t> spanning;

  explicit SpanIndex(const ImprovementModel& model) {
    const Timestamp T = model.horizon();
    const auto n = static_cast<std::size_t>(T) + 2;
    const Timestamp none = std::numeric_limits<Timestamp>::max();
    std::vector<Timestamp> min_source_by_end(n, none);
    std::vector<std::ptrdiff_t> diff(n, 0);
    for (Timestamp t = 1; t <= T; ++t) {
      for (auto u : model.sources_at(t)) {
        for (auto w : model.targets_of(u)) {
          const auto tw = model.slot_time(w);
          if (tw > T) {
            continue;
          }
          auto& m = min_source_by_end[static_cast<std::size_t>(tw)];
          m = std::min(m, t);
          ++diff[static_cast<std::size_t>(t) + 1];
          --diff[static_cast<std::size_t>(tw) + 1];
        }
      }
    }
    reach.assign(n, 0);
    spanning.assign(n, 0);
    Timestamp running = none;
    for (Timestamp t = T; t >= 1; --t) {
      running = std::min(running, min_source_by_end[static_cast<std::size_t>(t)]);
      reach[static_cast<std::size_t>(t)] = std::min(running, t);
    }
    std::ptrdiff_t acc = 0;
    for (Timestamp t = 1; t <= T; ++t) {
      acc += diff[static_cast<std::size_t>(t)];
      spanning[static_cast<std::size_t>(t)] = static_cast<std::size_t>(acc);
    }
  }
};

}  // namespace

std::vector<ActiveEdge> build_active_edges(const Graph& g, const CascadeSet& cs) {
  std::vector<ActiveEdge> out;
  for (const auto& x : cs.cascades()) {
    for (const auto& a : x.activations()) {
      for (NodeId w : g.out_neighbors(a.node)) {
        const auto tw = x.time_of(w);
        if (tw && *tw > a.time) {
          out.push_back({x.id(), a, {w, *tw}, 0});
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const ActiveEdge& l, const ActiveEdge& r) {
    if (l.cascade != r.cascade) {
      return l.cascade < r.cascade;
    }
    if (l.source.node != r.source.node) {
      return l.source.node < r.source.node;
    }
    return l.target.node < r.target.node;
  });
  return out;
}

std::vector<ActiveEdge> build_active_edges(const Graph& g, const CascadeSet& cs,
                                           const Clock& clock) {
  auto out = build_active_edges(g, cs);
  for (auto& e : out) {
    e.cut_count = cuts_between(clock, e.source.time, e.target.time);
  }
  return out;
}

bool CutSelection::conflict(const CutCandidate& a, const CutCandidate& b) {
  if (a.position == b.position) {
    return true;
  }
  const auto& lo = a.position < b.position ? a : b;
  const auto& hi = a.position < b.position ? b : a;
  return hi.reach < lo.position;
}

bool CutSelection::add_or_drop(const CutCandidate& candidate) {
  std::vector<Timestamp> clashing;
  double clashing_score = 0.0;
  // Reach is non-decreasing in position, so conflicts form a contiguous run
  // on each side of the candidate.
  auto it = accepted_.lower_bound(candidate.position);
  for (auto fwd = it; fwd != accepted_.end() && conflict(candidate, fwd->second); ++fwd) {
    clashing.push_back(fwd->first);
    clashing_score += fwd->second.score;
  }
  for (auto rev = std::make_reverse_iterator(it);
       rev != accepted_.rend() && conflict(candidate, rev->second); ++rev) {
    clashing.push_back(rev->first);
    clashing_score += rev->second.score;
  }
  if (!clashing.empty() && candidate.score <= clashing_score) {
    return false;
  }
  for (auto pos : clashing) {
    accepted_.erase(pos);
  }
  total_ += candidate.score - clashing_score;
  accepted_[candidate.position] = candidate;
#ifndef NDEBUG
  for (auto a = accepted_.begin(); a != accepted_.end(); ++a) {
    for (auto b = std::next(a); b != accepted_.end(); ++b) {
      assert(!conflict(a->second, b->second));
    }
  }
#endif
  return true;
}

std::vector<Timestamp> CutSelection::positions() const {
  std::vector<Timestamp> out;
  out.reserve(accepted_.size());
  for (const auto& [pos, c] : accepted_) {
    out.push_back(pos);
  }
  return out;
}

std::vector<CutCandidate> CutSelection::candidates() const {
  std::vector<CutCandidate> out;
  out.reserve(accepted_.size());
  for (const auto& [pos, c] : accepted_) {
    out.push_back(c);
  }
  return out;
}

GreedyResult solve_oc_greedy_detailed(const Graph& g, const CascadeSet& cs, const ICParams& p,
                                      NonActivationPolicy policy, const Condition* condition) {
  GreedyResult result;
  const Timestamp T = cs.horizon();
  if (T == 0) {
    result.solution = {clock_max(1), 0.0};
    return result;
  }
  const ImprovementModel model(g, cs, p, policy, condition);
  const SpanIndex spans(model);

  Clock clock = clock_max(T);
  double current = model.evaluate(clock);
  while (true) {
    const auto deltas = model.sweep_deltas(clock);
    ++result.stats.sweeps;
    result.stats.candidates_scored += deltas.size();

    CutSelection selection;
    const CutDelta* single_best = nullptr;
    for (const auto& d : deltas) {
      if (d.delta <= kPositiveDelta) {
        continue;
      }
      if (single_best == nullptr || d.delta > single_best->delta) {
        single_best = &d;
      }
      const auto idx = static_cast<std::size_t>(d.position);
      selection.add_or_drop({d.position, d.delta, spans.reach[idx], spans.spanning[idx]});
    }
    if (selection.empty()) {
      break;
    }
    const auto batch = selection.positions();
    Clock next = clock.with_cuts(batch);
    double value = model.evaluate(next);
    std::size_t added = batch.size();
    if (!(value > current)) {
      next = clock.with_cut(single_best->position);
      value = model.evaluate(next);
      added = 1;
      ++result.stats.fallbacks;
    }
    clock = std::move(next);
    current = value;
    result.stats.cuts_accepted += added;
  }
  result.solution = {std::move(clock), current};
  return result;
}

ClockSolution solve_oc_greedy(const Graph& g, const CascadeSet& cs, const ICParams& p,
                              NonActivationPolicy policy, const Condition* condition) {
  return solve_oc_greedy_detailed(g, cs, p, policy, condition).solution;
}

}  // namespace netclock
