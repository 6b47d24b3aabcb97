#include "netclock/simgen.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

namespace netclock {

Rng derived_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

void SimConfig::validate() const {
  if (nodes == 0 || attachment == 0 || cascade_count == 0 || min_cascade_size == 0) {
    throw std::invalid_argument("simulation counts must be positive");
  }
  if (!(stretch_mean >= 1.0)) {
    throw std::invalid_argument("stretch mean must be >= 1");
  }
  if (max_steps < 1) {
    throw std::invalid_argument("max steps must be >= 1");
  }
  if (max_attempts == 0) {
    throw std::invalid_argument("max attempts must be positive");
  }
  params.validate();
}

Graph generate_graph(std::size_t nodes, std::size_t attachment, Rng& rng) {
  if (attachment == 0) {
    throw std::invalid_argument("attachment must be positive");
  }
  std::vector<Edge> edges;
  std::vector<NodeId> endpoints;  // each node repeated once per incident link
  auto link = [&](NodeId a, NodeId b) {
    edges.push_back({a, b});
    edges.push_back({b, a});
    endpoints.push_back(a);
    endpoints.push_back(b);
  };
  const std::size_t seed_size = std::min(nodes, attachment + 1);
  for (NodeId a = 0; a < seed_size; ++a) {
    for (NodeId b = a + 1; b < seed_size; ++b) {
      link(a, b);
    }
  }
  std::vector<NodeId> chosen;
  for (auto v = static_cast<NodeId>(seed_size); v < nodes; ++v) {
    chosen.clear();
    while (chosen.size() < attachment) {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      const NodeId u = endpoints[pick(rng)];
      if (std::find(chosen.begin(), chosen.end(), u) == chosen.end()) {
        chosen.push_back(u);
      }
    }
    for (NodeId u : chosen) {
      link(v, u);
    }
  }
  return Graph::from_edges(edges, nodes);
}

Graph generate_graph(const SimConfig& cfg) {
  Rng rng = derived_rng(cfg.seed, 0xFFFF'FFFF'FFFF'FFFFull);
  return generate_graph(cfg.nodes, cfg.attachment, rng);
}

Cascade sample_cascade(const Graph& g, double p_e, double p_n, std::span<const NodeId> seeds,
                       Timestamp max_steps, bool spontaneous, Rng& rng, CascadeId id) {
  if (!(p_e >= 0.0 && p_e <= 1.0) || !(p_n >= 0.0 && p_n <= 1.0)) {
    throw std::invalid_argument("sampling probabilities must lie in [0,1]");
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::unordered_map<NodeId, Timestamp> active;
  std::vector<Activation> acts;
  std::vector<NodeId> front;
  for (NodeId s : seeds) {
    if (s >= g.node_count()) {
      throw std::out_of_range("seed node " + std::to_string(s) + " out of range");
    }
    if (active.emplace(s, 1).second) {
      acts.push_back({s, 1});
      front.push_back(s);
    }
  }
  const double stay_spontaneous = 1.0 - p_e;
  const double log_stay_neighbor = p_n >= 1.0 ? 0.0 : std::log1p(-p_n);
  auto join_probability = [&](std::size_t c) {
    if (c > 0 && p_n >= 1.0) {
      return 1.0;
    }
    return 1.0 - stay_spontaneous * std::exp(static_cast<double>(c) * log_stay_neighbor);
  };

  std::unordered_map<NodeId, std::size_t> pressure;
  std::vector<NodeId> candidates;
  for (Timestamp t = 1; t < max_steps; ++t) {
    if (front.empty() && !spontaneous) {
      break;
    }
    pressure.clear();
    for (NodeId u : front) {
      for (NodeId w : g.out_neighbors(u)) {
        if (!active.contains(w)) {
          ++pressure[w];
        }
      }
    }
    front.clear();
    if (spontaneous) {
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (active.contains(v)) {
          continue;
        }
        const auto it = pressure.find(v);
        const std::size_t c = it == pressure.end() ? 0 : it->second;
        if (unit(rng) < join_probability(c)) {
          front.push_back(v);
        }
      }
    } else {
      candidates.clear();
      for (const auto& [w, c] : pressure) {
        candidates.push_back(w);
      }
      std::sort(candidates.begin(), candidates.end());
      for (NodeId w : candidates) {
        if (unit(rng) < join_probability(pressure[w])) {
          front.push_back(w);
        }
      }
    }
    for (NodeId v : front) {
      active.emplace(v, t + 1);
      acts.push_back({v, t + 1});
    }
  }
  return Cascade(id, std::move(acts));
}

std::vector<Cascade> sample_cascades(const Graph& g, const SimConfig& cfg, SampleStats* stats) {
  cfg.validate();
  if (g.node_count() == 0) {
    throw std::invalid_argument("cannot sample cascades on an empty graph");
  }
  std::vector<Cascade> out(cfg.cascade_count);
  std::vector<std::size_t> attempts(cfg.cascade_count, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    try {
      while (!failed.load()) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cfg.cascade_count) {
          return;
        }
        Rng rng = derived_rng(cfg.seed, i);
        std::uniform_int_distribution<NodeId> start(0, static_cast<NodeId>(g.node_count() - 1));
        bool done = false;
        for (std::size_t a = 0; a < cfg.max_attempts; ++a) {
          const NodeId s = start(rng);
          Cascade c = sample_cascade(g, cfg.params.p_e, cfg.params.p_n, std::span(&s, 1),
                                     cfg.max_steps, cfg.spontaneous, rng,
                                     static_cast<CascadeId>(i));
          attempts[i] = a + 1;
          if (c.size() >= cfg.min_cascade_size) {
            out[i] = std::move(c);
            done = true;
            break;
          }
        }
        if (!done) {
          throw SamplingError("cascade " + std::to_string(i) + " did not reach size " +
                              std::to_string(cfg.min_cascade_size) + " within " +
                              std::to_string(cfg.max_attempts) + " attempts");
        }
      }
    } catch (...) {
      failed.store(true);
      std::lock_guard lock(error_mutex);
      if (!error) {
        error = std::current_exception();
      }
    }
  };

  const unsigned workers = std::max(1u, cfg.threads);
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
  if (error) {
    std::rethrow_exception(error);
  }
  if (stats != nullptr) {
    stats->accepted = out.size();
    stats->attempts = 0;
    for (auto a : attempts) {
      stats->attempts += a;
    }
  }
  return out;
}

StretchResult stretch(const CascadeSet& cs, double stretch_mean, Rng& rng) {
  if (!(stretch_mean >= 1.0)) {
    throw std::invalid_argument("stretch mean must be >= 1");
  }
  const Timestamp T = cs.horizon();
  if (T == 0) {
    return {cs, clock_max(1)};
  }
  std::geometric_distribution<Timestamp> extra(1.0 / stretch_mean);
  std::vector<Timestamp> start(static_cast<std::size_t>(T) + 2, 1);
  for (Timestamp i = 1; i <= T; ++i) {
    const Timestamp len = stretch_mean == 1.0 ? 1 : 1 + extra(rng);
    start[static_cast<std::size_t>(i) + 1] = start[static_cast<std::size_t>(i)] + len;
  }
  std::vector<Cascade> moved;
  moved.reserve(cs.cascade_count());
  for (const auto& x : cs.cascades()) {
    std::vector<Activation> acts;
    acts.reserve(x.size());
    for (const auto& a : x.activations()) {
      const auto i = static_cast<std::size_t>(a.time);
      std::uniform_int_distribution<Timestamp> tick(start[i], start[i + 1] - 1);
      acts.push_back({a.node, tick(rng)});
    }
    moved.emplace_back(x.id(), std::move(acts));
  }
  Timestamp earliest = start[static_cast<std::size_t>(T) + 1];
  for (const auto& x : moved) {
    if (!x.empty()) {
      earliest = std::min(earliest, x.activations().front().time);
    }
  }
  auto data = CascadeSet::from_cascades(std::move(moved), cs.node_count());
  const Timestamp shift = earliest - 1;
  std::vector<Timestamp> cuts;
  for (Timestamp i = 2; i <= T; ++i) {
    const Timestamp b = start[static_cast<std::size_t>(i)] - shift;
    if (b >= 2 && b <= data.horizon()) {
      cuts.push_back(b);
    }
  }
  Clock hidden(data.horizon(), std::move(cuts));
  return {std::move(data), std::move(hidden)};
}

SyntheticDataset simulate(const SimConfig& cfg) {
  cfg.validate();
  SyntheticDataset out;
  out.graph = generate_graph(cfg);
  auto cascades = sample_cascades(out.graph, cfg, &out.stats);
  out.original = CascadeSet::from_cascades(std::move(cascades), out.graph.node_count());
  Rng rng = derived_rng(cfg.seed, 0xFFFF'FFFF'FFFF'FFFEull);
  auto stretched = stretch(out.original, cfg.stretch_mean, rng);
  out.stretched = std::move(stretched.data);
  out.hidden = std::move(stretched.hidden);
  return out;
}

}  // namespace netclock
