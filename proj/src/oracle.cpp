#include "netclock/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace netclock {

namespace {

bool strictly_better(double candidate, double incumbent) {
  return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

}  // namespace

ClockSolution oracle_oc(const Graph& g, const CascadeSet& cs, const ICParams& p,
                        NonActivationPolicy policy, Timestamp bound) {
  if (cs.horizon() == 0) {
    return {clock_max(1), 0.0};
  }
  ClockSolution best{clock_max(cs.horizon()), 0.0};
  bool first = true;
  for_each_clock(
      cs.horizon(),
      [&](const Clock& c) {
        const double v = improvement(g, cs, c, p, policy);
        if (first || strictly_better(v, best.improvement)) {
          best = {c, v};
          first = false;
        }
      },
      bound);
  return best;
}

MultiClockSolution oracle_koc(const Graph& g, const CascadeSet& cs, std::size_t k,
                              const ICParams& p) {
  if (k < 1) {
    throw std::invalid_argument("k must be at least 1");
  }
  if (cs.horizon() > kOracleKocHorizonLimit) {
    throw std::length_error("k-clock oracle refused: T=" + std::to_string(cs.horizon()) +
                            " exceeds " + std::to_string(kOracleKocHorizonLimit));
  }
  const Timestamp T = std::max<Timestamp>(cs.horizon(), 1);
  const auto menu = enumerate_clocks(T);
  const ActivationGains gains(g, cs, p);
  std::vector<std::vector<double>> scores;
  scores.reserve(menu.size());
  for (const auto& c : menu) {
    scores.push_back(gains.node_scores(c));
  }
  const std::size_t nodes = g.node_count();

  // When every node's favourite clock fits in the budget the optimum is
  // simply each node at its favourite.
  std::vector<std::size_t> favourites;
  for (std::size_t v = 0; v < nodes; ++v) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < menu.size(); ++i) {
      if (scores[i][v] > scores[arg][v]) {
        arg = i;
      }
    }
    if (scores[arg][v] > 0.0) {
      favourites.push_back(arg);
    }
  }
  std::sort(favourites.begin(), favourites.end());
  favourites.erase(std::unique(favourites.begin(), favourites.end()), favourites.end());
  if (favourites.empty()) {
    favourites.push_back(0);
  }
  if (favourites.size() <= k) {
    ClockSet chosen;
    for (auto i : favourites) {
      chosen.push_back(menu[i]);
    }
    return describe_clock_set(g, cs, chosen, p);
  }
  if (k > kOracleKocMaxK) {
    throw std::length_error("k-clock oracle refused: k=" + std::to_string(k) + " exceeds " +
                            std::to_string(kOracleKocMaxK));
  }

  const std::size_t m = menu.size();
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) {
    idx[i] = i;
  }
  std::vector<std::size_t> best_idx = idx;
  double best_total = -1.0;
  while (true) {
    double total = 0.0;
    for (std::size_t v = 0; v < nodes; ++v) {
      double top = scores[idx[0]][v];
      for (std::size_t j = 1; j < k; ++j) {
        top = std::max(top, scores[idx[j]][v]);
      }
      total += top;
    }
    if (best_total < 0.0 || strictly_better(total, best_total)) {
      best_total = total;
      best_idx = idx;
    }
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + (i - 1)) {
      --i;
    }
    if (i == 0) {
      break;
    }
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) {
      idx[j] = idx[j - 1] + 1;
    }
  }
  ClockSet chosen;
  for (auto i : best_idx) {
    chosen.push_back(menu[i]);
  }
  return describe_clock_set(g, cs, chosen, p);
}

}  // namespace netclock
