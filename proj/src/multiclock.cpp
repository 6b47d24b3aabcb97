#include "netclock/multiclock.hpp"

#include <stdexcept>
#include <string>

#include "netclock/solver_dp.hpp"
#include "netclock/solver_greedy.hpp"

namespace netclock {

std::string_view to_string(InnerSolver inner) {
  return inner == InnerSolver::dp ? "dp" : "greedy";
}

InnerSolver parse_inner_solver(std::string_view text) {
  if (text == "dp") {
    return InnerSolver::dp;
  }
  if (text == "greedy") {
    return InnerSolver::greedy;
  }
  throw std::invalid_argument("unknown inner solver '" + std::string(text) + "'");
}

ActivationGains::ActivationGains(const Graph& g, const CascadeSet& cs, const ICParams& p)
    : horizon_(cs.horizon()), node_count_(g.node_count()) {
  p.validate();
  const auto A = cs.total_activations();
  activation_node_.reserve(A);
  activation_time_.reserve(A);
  influencer_offsets_.reserve(A + 1);
  influencer_offsets_.push_back(0);
  for (const auto& x : cs.cascades()) {
    for (const auto& a : x.activations()) {
      activation_node_.push_back(a.node);
      activation_time_.push_back(a.time);
      for (NodeId u : g.in_neighbors(a.node)) {
        const auto tu = x.time_of(u);
        if (tu && *tu < a.time) {
          influencer_times_.push_back(*tu);
        }
      }
      influencer_offsets_.push_back(influencer_times_.size());
    }
  }
  const double base = activation_loglik(0, p);
  gain_.resize(g.max_in_degree() + 1);
  for (std::size_t c = 0; c < gain_.size(); ++c) {
    gain_[c] = c == 0 ? 0.0 : activation_loglik(c, p) - base;
  }
}

std::vector<double> ActivationGains::evaluate(const Clock& clock) const {
  std::vector<double> out(activation_node_.size(), 0.0);
  if (horizon_ == 0) {
    return out;
  }
  if (clock.horizon() != horizon_) {
    throw std::invalid_argument("clock horizon " + std::to_string(clock.horizon()) +
                                " does not match data horizon " + std::to_string(horizon_));
  }
  std::vector<std::size_t> step(static_cast<std::size_t>(horizon_) + 1, 0);
  for (Timestamp t = 1; t <= horizon_; ++t) {
    step[static_cast<std::size_t>(t)] = clock.remap(t);
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    const auto target = step[static_cast<std::size_t>(activation_time_[a])];
    std::size_t c = 0;
    for (auto i = influencer_offsets_[a]; i < influencer_offsets_[a + 1]; ++i) {
      if (step[static_cast<std::size_t>(influencer_times_[i])] + 1 == target) {
        ++c;
      }
    }
    out[a] = gain_[c];
  }
  return out;
}

std::vector<double> ActivationGains::node_scores(const std::vector<double>& activation_gains) const {
  std::vector<double> out(node_count_, 0.0);
  for (std::size_t a = 0; a < activation_gains.size(); ++a) {
    out[activation_node_[a]] += activation_gains[a];
  }
  return out;
}

std::vector<double> ActivationGains::node_scores(const Clock& clock) const {
  return node_scores(evaluate(clock));
}

namespace {

void require_clocks(const ClockSet& clocks) {
  if (clocks.empty()) {
    throw std::invalid_argument("clock set must contain at least one clock");
  }
}

// Best score per node and its argmax, updated clock by clock.
struct NodeBest {
  std::vector<double> score;
  ClockAssignment assignment;

  explicit NodeBest(std::size_t nodes) : score(nodes, 0.0), assignment(nodes, 0) {}

  void offer(const std::vector<double>& scores, std::uint32_t index, bool first) {
    for (std::size_t v = 0; v < score.size(); ++v) {
      if (first || scores[v] > score[v]) {
        score[v] = scores[v];
        assignment[v] = index;
      }
    }
  }

  double total() const {
    double t = 0.0;
    for (double s : score) {
      t += s;
    }
    return t;
  }
};

}  // namespace

double multi_improvement(const Graph& g, const CascadeSet& cs, const ClockSet& clocks,
                         const ICParams& p) {
  return describe_clock_set(g, cs, clocks, p).total;
}

ClockAssignment assign_nodes(const Graph& g, const CascadeSet& cs, const ClockSet& clocks,
                             const ICParams& p) {
  return describe_clock_set(g, cs, clocks, p).assignment;
}

MultiClockSolution describe_clock_set(const Graph& g, const CascadeSet& cs, const ClockSet& clocks,
                                      const ICParams& p) {
  require_clocks(clocks);
  const ActivationGains gains(g, cs, p);
  NodeBest best(g.node_count());
  MultiClockSolution out;
  out.clocks = clocks;
  double previous = 0.0;
  for (std::uint32_t i = 0; i < clocks.size(); ++i) {
    best.offer(gains.node_scores(clocks[i]), i, i == 0);
    const double now = best.total();
    out.per_clock_gain.push_back(now - previous);
    previous = now;
  }
  out.assignment = std::move(best.assignment);
  out.total = previous;
  return out;
}

MultiClockSolution solve_koc(const Graph& g, const CascadeSet& cs, std::size_t k,
                             const ICParams& p, NonActivationPolicy policy, InnerSolver inner) {
  if (k < 1) {
    throw std::invalid_argument("k must be at least 1");
  }
  const ActivationGains gains(g, cs, p);
  auto run = [&](const Condition* condition) {
    return inner == InnerSolver::dp ? solve_oc_dp(g, cs, p, policy, condition)
                                    : solve_oc_greedy(g, cs, p, policy, condition);
  };

  MultiClockSolution out;
  NodeBest best(g.node_count());
  std::vector<double> secured(gains.activation_count(), 0.0);  // gain under the assigned clock
  std::vector<std::vector<double>> per_clock_activation_gains;
  double total = 0.0;

  for (std::size_t round = 0; round < k; ++round) {
    ClockSolution found;
    if (round == 0) {
      found = run(nullptr);
    } else {
      const Condition condition{secured};
      found = run(&condition);
    }
    auto activation_gains = gains.evaluate(found.clock);
    const auto scores = gains.node_scores(activation_gains);
    NodeBest trial = best;
    const auto index = static_cast<std::uint32_t>(out.clocks.size());
    trial.offer(scores, index, round == 0);
    const double now = trial.total();
    const double marginal = now - total;
    if (round > 0 && marginal < 1e-9) {
      break;
    }
    best = std::move(trial);
    out.clocks.push_back(found.clock);
    out.per_clock_gain.push_back(marginal);
    per_clock_activation_gains.push_back(std::move(activation_gains));
    total = now;

    std::size_t a = 0;
    for (const auto& x : cs.cascades()) {
      for (const auto& act : x.activations()) {
        secured[a] = per_clock_activation_gains[best.assignment[act.node]][a];
        ++a;
      }
    }
  }
  out.assignment = std::move(best.assignment);
  out.total = total;
  return out;
}

}  // namespace netclock
