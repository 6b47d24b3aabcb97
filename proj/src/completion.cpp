#include "netclock/completion.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace netclock {

CompletionInstance hide(const Cascade& cascade, double drop_rate, Rng& rng) {
  if (cascade.size() < 2) {
    throw std::invalid_argument("cascade " + std::to_string(cascade.id()) +
                                " needs at least 2 activations to hide any");
  }
  if (!(drop_rate >= 0.0 && drop_rate < 1.0)) {
    throw std::invalid_argument("drop rate must lie in [0,1)");
  }
  std::bernoulli_distribution drop(drop_rate);
  const auto acts = cascade.activations();
  std::vector<Activation> kept;
  CompletionInstance out;
  out.drop_rate = drop_rate;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    const bool interior = i != 0 && i + 1 != acts.size();
    if (interior && drop(rng)) {
      out.hidden.push_back(acts[i]);
    } else {
      kept.push_back(acts[i]);
    }
  }
  out.observed = Cascade(cascade.id(), std::move(kept));
  return out;
}

namespace {

void score(CompletionResult& r, const std::vector<Activation>& hidden) {
  if (!r.feasible) {
    r.precision = r.recall = r.f1 = 0.0;
    return;
  }
  std::unordered_set<NodeId> truth;
  for (const auto& a : hidden) {
    truth.insert(a.node);
  }
  std::size_t hits = 0;
  for (const auto& a : r.inferred) {
    hits += truth.count(a.node);
  }
  const auto inferred = static_cast<double>(r.inferred.size());
  if (truth.empty()) {
    r.recall = 1.0;
    r.precision = r.inferred.empty() ? 1.0 : 0.0;
  } else {
    r.recall = static_cast<double>(hits) / static_cast<double>(truth.size());
    r.precision = r.inferred.empty() ? 0.0 : static_cast<double>(hits) / inferred;
  }
  const double denom = r.precision + r.recall;
  r.f1 = denom > 0.0 ? 2.0 * r.precision * r.recall / denom : 0.0;
}

}  // namespace

CompletionResult complete(const Graph& g, const CompletionInstance& instance, const Clock& clock,
                          const CompletionOptions& options) {
  CompletionResult result;
  const auto acts = instance.observed.activations();
  if (acts.empty()) {
    result.feasible = true;
    score(result, instance.hidden);
    return result;
  }

  struct Item {
    NodeId node;
    std::int64_t depth;
  };
  std::vector<Item> items;
  items.reserve(acts.size());
  std::int64_t root_step = 0;
  for (std::size_t i = 0; i < acts.size(); ++i) {
    if (acts[i].node >= g.node_count()) {
      throw std::out_of_range("node " + std::to_string(acts[i].node) + " not in graph");
    }
    const auto step = static_cast<std::int64_t>(clock.remap(acts[i].time));
    root_step = i == 0 ? step : std::min(root_step, step);
    items.push_back({acts[i].node, step});
  }
  for (auto& it : items) {
    it.depth -= root_step;
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.depth != b.depth ? a.depth < b.depth : a.node < b.node;
  });

  std::unordered_set<NodeId> observed;
  for (const auto& it : items) {
    observed.insert(it.node);
  }
  std::unordered_map<NodeId, std::int64_t> placed;
  std::unordered_set<NodeId> inferred_nodes;

  const auto levels_cap = static_cast<std::int64_t>(options.max_chain);
  const auto key = [levels_cap](NodeId node, std::int64_t level) {
    return static_cast<std::uint64_t>(node) * static_cast<std::uint64_t>(levels_cap + 2) +
           static_cast<std::uint64_t>(level);
  };

  for (const auto& item : items) {
    const NodeId v = item.node;
    const std::int64_t d = item.depth;
    if (d == 0) {
      placed[v] = 0;
      continue;
    }
    std::unordered_map<std::uint64_t, NodeId> parent;  // (node, level) -> node one level down
    std::vector<NodeId> frontier{v};
    bool attached = false;
    const std::int64_t max_level = std::min(d, levels_cap);
    for (std::int64_t j = 1; j <= max_level && !attached && !frontier.empty(); ++j) {
      struct Endpoint {
        NodeId node;
        NodeId child;
      };
      std::vector<Endpoint> endpoints;
      std::vector<NodeId> next;
      for (NodeId x : frontier) {
        for (NodeId y : g.in_neighbors(x)) {
          const auto p = placed.find(y);
          if (p != placed.end()) {
            if (p->second == d - j) {
              endpoints.push_back({y, x});
            }
            continue;
          }
          if (observed.contains(y) || j == max_level) {
            continue;
          }
          if (parent.emplace(key(y, j), x).second) {
            next.push_back(y);
          }
        }
      }
      std::sort(endpoints.begin(), endpoints.end(), [&](const Endpoint& a, const Endpoint& b) {
        const bool ia = inferred_nodes.contains(a.node);
        const bool ib = inferred_nodes.contains(b.node);
        if (ia != ib) {
          return ia;
        }
        return a.node != b.node ? a.node < b.node : a.child < b.child;
      });
      for (const auto& e : endpoints) {
        // Intermediates from level j-1 down to 1.
        std::vector<NodeId> chain;
        NodeId x = e.child;
        for (std::int64_t level = j - 1; level >= 1; --level) {
          chain.push_back(x);
          x = parent.at(key(x, level));
        }
        std::vector<NodeId> check = chain;
        check.push_back(v);
        std::sort(check.begin(), check.end());
        if (std::adjacent_find(check.begin(), check.end()) != check.end()) {
          continue;
        }
        for (std::size_t i = 0; i < chain.size(); ++i) {
          const std::int64_t level = j - 1 - static_cast<std::int64_t>(i);
          const std::int64_t depth = d - level;
          placed[chain[i]] = depth;
          inferred_nodes.insert(chain[i]);
          result.inferred.push_back({chain[i], root_step + depth});
        }
        placed[v] = d;
        attached = true;
        break;
      }
      frontier = std::move(next);
    }
    if (!attached) {
      result.feasible = false;
      score(result, instance.hidden);
      return result;
    }
  }
  result.feasible = true;
  score(result, instance.hidden);
  return result;
}

std::vector<CompletionRow> completion_batch(const Graph& g, const CascadeSet& cs,
                                            const Clock& clock, std::span<const double> drop_rates,
                                            std::uint64_t seed, unsigned threads,
                                            const CompletionOptions& options) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < cs.cascade_count(); ++i) {
    if (cs.cascade(i).size() >= 2) {
      usable.push_back(i);
    }
  }
  std::vector<CompletionRow> rows;
  for (std::size_t r = 0; r < drop_rates.size(); ++r) {
    const double rate = drop_rates[r];
    std::vector<CompletionResult> results(usable.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= usable.size()) {
          return;
        }
        Rng rng = derived_rng(seed + 0x9E3779B97F4A7C15ull * (r + 1), usable[k]);
        const auto instance = hide(cs.cascade(usable[k]), rate, rng);
        results[k] = complete(g, instance, clock, options);
      }
    };
    const unsigned workers = std::max(1u, threads);
    if (workers == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
      }
      for (auto& th : pool) {
        th.join();
      }
    }
    CompletionRow row;
    row.drop_rate = rate;
    row.cascades = results.size();
    for (const auto& res : results) {
      row.success_rate += res.feasible ? 1.0 : 0.0;
      row.precision += res.precision;
      row.recall += res.recall;
      row.f1 += res.f1;
    }
    if (!results.empty()) {
      const auto n = static_cast<double>(results.size());
      row.success_rate /= n;
      row.precision /= n;
      row.recall /= n;
      row.f1 /= n;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace netclock
