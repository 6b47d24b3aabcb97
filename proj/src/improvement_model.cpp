#include "netclock/improvement_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace netclock {

ImprovementModel::ImprovementModel(const Graph& g, const CascadeSet& cs, const ICParams& p,
                                   NonActivationPolicy policy, const Condition* condition)
    : horizon_(cs.horizon()), policy_(policy), conditioned_(condition != nullptr) {
  p.validate();
  const std::size_t A = cs.total_activations();
  if (conditioned_) {
    if (condition->prior.size() != A) {
      throw std::invalid_argument("condition prior size " + std::to_string(condition->prior.size()) +
                                  " does not match activation count " + std::to_string(A));
    }
    prior_ = condition->prior;
  }
  const bool dangling = !conditioned_ && policy_ != NonActivationPolicy::none;
  const auto T = static_cast<std::size_t>(horizon_);

  std::vector<Timestamp> act_time(A);
  std::vector<NodeId> act_node(A);
  for (std::size_t ci = 0; ci < cs.cascade_count(); ++ci) {
    const auto base = cs.activation_offset(ci);
    const auto acts = cs.cascade(ci).activations();
    for (std::size_t j = 0; j < acts.size(); ++j) {
      act_time[base + j] = acts[j].time;
      act_node[base + j] = acts[j].node;
    }
  }

  time_offsets_.assign(T + 2, 0);
  for (auto t : act_time) {
    ++time_offsets_[static_cast<std::size_t>(t) + 1];
  }
  for (std::size_t t = 1; t <= T + 1; ++t) {
    time_offsets_[t] += time_offsets_[t - 1];
  }
  by_time_.resize(A);
  {
    auto fill = time_offsets_;
    for (std::uint32_t a = 0; a < A; ++a) {
      by_time_[fill[static_cast<std::size_t>(act_time[a])]++] = a;
    }
  }
  cumulative_.assign(T + 1, 0);
  for (std::size_t t = 1; t <= T; ++t) {
    cumulative_[t] = time_offsets_[t + 1];
  }

  slot_time_ = act_time;
  target_offsets_.assign(A + 1, 0);
  const std::size_t n = g.node_count();
  std::vector<std::int64_t> act_slot(n, -1);
  std::vector<std::int64_t> dangling_slot(n, -1);
  std::vector<std::size_t> stamp(n, SIZE_MAX);
  std::vector<std::size_t> dangling_stamp(n, SIZE_MAX);
  for (std::size_t ci = 0; ci < cs.cascade_count(); ++ci) {
    const auto base = cs.activation_offset(ci);
    const auto acts = cs.cascade(ci).activations();
    for (std::size_t j = 0; j < acts.size(); ++j) {
      if (acts[j].node >= n) {
        throw std::invalid_argument("cascade node " + std::to_string(acts[j].node) +
                                    " not in graph");
      }
      stamp[acts[j].node] = ci;
      act_slot[acts[j].node] = static_cast<std::int64_t>(base + j);
    }
    for (std::size_t j = 0; j < acts.size(); ++j) {
      const auto u = base + j;
      for (NodeId w : g.out_neighbors(acts[j].node)) {
        if (stamp[w] == ci) {
          const auto slot = static_cast<std::size_t>(act_slot[w]);
          if (act_time[slot] > act_time[u]) {
            targets_.push_back(static_cast<std::uint32_t>(slot));
          }
        } else if (dangling) {
          if (dangling_stamp[w] != ci) {
            dangling_stamp[w] = ci;
            dangling_slot[w] = static_cast<std::int64_t>(slot_time_.size());
            slot_time_.push_back(horizon_ + 1);
          }
          targets_.push_back(static_cast<std::uint32_t>(dangling_slot[w]));
        }
      }
      target_offsets_[u + 1] = targets_.size();
    }
  }

  const std::size_t max_c = g.max_in_degree();
  act_gain_.resize(max_c + 1);
  na_gain_.resize(max_c + 1);
  const double base_act = activation_loglik(0, p);
  const double base_na = nonactivation_loglik(0, p);
  for (std::size_t c = 0; c <= max_c; ++c) {
    act_gain_[c] = activation_loglik(c, p) - base_act;
    double na = 0.0;
    if (!conditioned_) {
      if (policy_ == NonActivationPolicy::contagious_only && c > 0) {
        na = nonactivation_loglik(c, p);
      } else if (policy_ == NonActivationPolicy::full) {
        na = nonactivation_loglik(c, p) - base_na;
      }
    }
    na_gain_[c] = na;
  }
  spontaneous_na_ = base_na;
  population_ = static_cast<double>(cs.cascade_count()) * static_cast<double>(n);
}

double ImprovementModel::interval_constant(Timestamp end) const noexcept {
  if (conditioned_ || policy_ != NonActivationPolicy::full || end >= horizon_) {
    return 0.0;
  }
  const auto inactive = population_ - static_cast<double>(cumulative_[static_cast<std::size_t>(end)]);
  return inactive * spontaneous_na_;
}

std::span<const std::uint32_t> ImprovementModel::sources_between(Timestamp from,
                                                                 Timestamp to) const {
  from = std::max<Timestamp>(from, 1);
  to = std::min(to, horizon_);
  if (from > to) {
    return {};
  }
  const auto lo = time_offsets_[static_cast<std::size_t>(from)];
  const auto hi = time_offsets_[static_cast<std::size_t>(to) + 1];
  return {by_time_.data() + lo, hi - lo};
}

double ImprovementModel::pair_score_impl(const std::optional<Interval>& prev, const Interval& cur,
                                         std::vector<std::uint32_t>& count,
                                         std::vector<std::uint32_t>& touched) const {
  double score = interval_constant(cur.end);
  if (!prev) {
    return score;
  }
  if (!adjacent(*prev, cur)) {
    throw std::invalid_argument("intervals are not adjacent");
  }
  touched.clear();
  for (auto u : sources_between(prev->start, prev->end)) {
    for (auto w : targets_of(u)) {
      if (count[w]++ == 0) {
        touched.push_back(w);
      }
    }
  }
  for (auto w : touched) {
    const auto tw = slot_time_[w];
    const auto c = count[w];
    count[w] = 0;
    if (tw < cur.start) {
      continue;
    }
    score += tw <= cur.end ? activation_gain(w, c) : nonactivation_gain(c);
  }
  return score;
}

double ImprovementModel::pair_score(const std::optional<Interval>& prev, const Interval& cur) const {
  std::vector<std::uint32_t> count(slot_count(), 0);
  std::vector<std::uint32_t> touched;
  return pair_score_impl(prev, cur, count, touched);
}

double ImprovementModel::evaluate(const Clock& clock) const {
  if (horizon_ == 0) {
    return 0.0;
  }
  if (clock.horizon() != horizon_) {
    throw std::invalid_argument("clock horizon " + std::to_string(clock.horizon()) +
                                " does not match data horizon " + std::to_string(horizon_));
  }
  std::vector<std::uint32_t> count(slot_count(), 0);
  std::vector<std::uint32_t> touched;
  double total = 0.0;
  std::optional<Interval> prev;
  for (const auto& iv : clock.intervals()) {
    total += pair_score_impl(prev, iv, count, touched);
    prev = iv;
  }
  return total;
}

double ImprovementModel::delta_for_cut(const Clock& clock, Timestamp t) const {
  if (clock.horizon() != horizon_) {
    throw std::invalid_argument("clock horizon does not match data horizon");
  }
  if (t < 2 || t > horizon_) {
    throw std::out_of_range("cut position " + std::to_string(t) + " outside [2," +
                            std::to_string(horizon_) + "]");
  }
  if (clock.is_boundary(t)) {
    throw std::invalid_argument("time " + std::to_string(t) + " is already a clock boundary");
  }
  const auto idx = clock.remap(t) - 1;
  const Interval whole = clock.interval(idx);
  const std::optional<Interval> prev =
      idx > 0 ? std::optional<Interval>(clock.interval(idx - 1)) : std::nullopt;
  const std::optional<Interval> next = idx + 1 < clock.interval_count()
                                           ? std::optional<Interval>(clock.interval(idx + 1))
                                           : std::nullopt;
  const Interval left{whole.start, t - 1};
  const Interval right{t, whole.end};

  std::vector<std::uint32_t> count(slot_count(), 0);
  std::vector<std::uint32_t> touched;
  auto pair = [&](const std::optional<Interval>& a, const Interval& b) {
    return pair_score_impl(a, b, count, touched);
  };
  double after = pair(prev, left) + pair(left, right);
  double before = pair(prev, whole);
  if (next) {
    after += pair(right, *next);
    before += pair(whole, *next);
  }
  return after - before;
}

std::vector<CutDelta> ImprovementModel::sweep_deltas(const Clock& clock) const {
  std::vector<CutDelta> out;
  if (horizon_ < 2) {
    return out;
  }
  if (clock.horizon() != horizon_) {
    throw std::invalid_argument("clock horizon does not match data horizon");
  }
  const auto S = slot_count();
  std::vector<std::uint32_t> c_prev(S, 0), c_whole(S, 0), c_left(S, 0);
  std::vector<std::uint32_t> touched_prev, touched_whole, touched_left;

  auto accumulate = [&](Timestamp from, Timestamp to, std::vector<std::uint32_t>& count,
                        std::vector<std::uint32_t>& touched) {
    for (auto u : sources_between(from, to)) {
      for (auto w : targets_of(u)) {
        if (count[w]++ == 0) {
          touched.push_back(w);
        }
      }
    }
  };
  auto reset = [](std::vector<std::uint32_t>& count, std::vector<std::uint32_t>& touched) {
    for (auto w : touched) {
      count[w] = 0;
    }
    touched.clear();
  };

  const auto intervals = clock.intervals();
  for (std::size_t j = 0; j < intervals.size(); ++j) {
    const Interval whole = intervals[j];
    if (whole.start == whole.end) {
      continue;
    }
    const bool has_next = j + 1 < intervals.size();
    const Timestamp next_end = has_next ? intervals[j + 1].end : whole.end;

    if (j > 0) {
      accumulate(intervals[j - 1].start, intervals[j - 1].end, c_prev, touched_prev);
    }
    if (has_next) {
      accumulate(whole.start, whole.end, c_whole, touched_whole);
    }

    // Terms are grouped as in the derivation of the cut delta:
    //  gain_left    targets activated in [t, z] now fed by [a, t-1]
    //  gain_next    targets activated in the next interval lose sources in [a, t-1]
    //  na_split     targets activated in [t, z] get a non-activation term in [a, t-1]
    //  na_right     never-yet-active targets during [t, z] fed by [a, t-1]
    //  na_next      never-yet-active targets during the next interval
    double gain_left = 0.0, gain_next = 0.0, na_split = 0.0, na_right = 0.0, na_next = 0.0;
    for (auto w : touched_prev) {
      const auto tw = slot_time_[w];
      if (whole.contains(tw)) {
        gain_left -= activation_gain(w, c_prev[w]);
        na_split += nonactivation_gain(c_prev[w]);
      }
    }

    for (Timestamp t = whole.start + 1; t <= whole.end; ++t) {
      const auto moved = sources_at(t - 1);
      for (auto v : moved) {
        gain_left -= activation_gain(v, c_left[v]) - activation_gain(v, c_prev[v]);
        na_split -= nonactivation_gain(c_prev[v]);
      }
      for (auto u : moved) {
        for (auto w : targets_of(u)) {
          const std::uint32_t old_c = c_left[w];
          const std::uint32_t new_c = old_c + 1;
          if (old_c == 0) {
            touched_left.push_back(w);
          }
          c_left[w] = new_c;
          const auto tw = slot_time_[w];
          if (tw <= whole.end) {
            gain_left += activation_gain(w, new_c) - activation_gain(w, old_c);
            continue;
          }
          na_right += nonactivation_gain(new_c) - nonactivation_gain(old_c);
          if (!has_next) {
            continue;
          }
          const std::uint32_t cw = c_whole[w];
          if (tw <= next_end) {
            gain_next += activation_gain(w, cw - new_c) - activation_gain(w, cw - old_c);
          } else {
            na_next += nonactivation_gain(cw - new_c) - nonactivation_gain(cw - old_c);
          }
        }
      }
      if (!sources_at(t).empty()) {
        out.push_back({t, gain_left + gain_next + na_split + na_right + na_next +
                              interval_constant(t - 1)});
      }
    }
    reset(c_prev, touched_prev);
    reset(c_whole, touched_whole);
    reset(c_left, touched_left);
  }
  return out;
}

}  // namespace netclock
