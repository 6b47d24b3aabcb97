#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"
#include "netclock/graph.hpp"
#include "netclock/likelihood.hpp"

namespace netclock {

using Rng = std::mt19937_64;

/// Independent generator for stream `stream` of a run seeded with `seed`.
Rng derived_rng(std::uint64_t seed, std::uint64_t stream);

struct SimConfig {
  std::size_t nodes = 1000;
  /// Edges each new node attaches with (preferential attachment).
  std::size_t attachment = 2;
  ICParams params{};
  std::size_t min_cascade_size = 30;
  std::size_t cascade_count = 5000;
  double stretch_mean = 1.0;
  std::uint64_t seed = 1;
  Timestamp max_steps = 1000;
  bool spontaneous = false;
  /// Sampling attempts allowed per requested cascade before giving up.
  std::size_t max_attempts = 1000000;
  unsigned threads = 1;

  void validate() const;
};

class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scale-free graph: a clique on attachment+1 nodes, then each new node links
/// to `attachment` distinct existing nodes chosen proportionally to degree.
/// Every undirected link is stored in both directions.
Graph generate_graph(std::size_t nodes, std::size_t attachment, Rng& rng);
Graph generate_graph(const SimConfig& cfg);

/*
  Discrete-time independent cascade. Seeds activate at time 1. At step t+1
  an inactive node with c in-neighbors activated at step t joins with
  probability 1 - (1-p_e)(1-p_n)^c. With `spontaneous` off only nodes with
  c > 0 are considered (p_e still enters the formula) and the run ends when
  the front dies out; with it on every inactive node may join and the run
  lasts max_steps. p_e and p_n may be any values in [0, 1].
*/
Cascade sample_cascade(const Graph& g, double p_e, double p_n, std::span<const NodeId> seeds,
                       Timestamp max_steps, bool spontaneous, Rng& rng, CascadeId id = 0);

struct SampleStats {
  std::size_t attempts = 0;
  std::size_t accepted = 0;
};

/// cascade_count cascades of at least min_cascade_size activations, each
/// from a uniformly random start node. Cascade i draws from
/// derived_rng(seed, i), so results do not depend on the thread count.
/// Throws SamplingError when a cascade exhausts max_attempts.
std::vector<Cascade> sample_cascades(const Graph& g, const SimConfig& cfg,
                                     SampleStats* stats = nullptr);

struct StretchResult {
  CascadeSet data;
  Clock hidden;
};

/// Expands original step i into the i-th interval of a random clock with
/// geometric interval lengths of mean `stretch_mean` and moves each
/// activation to a uniform tick inside its interval. The hidden clock is
/// expressed on the returned (normalized) timeline.
StretchResult stretch(const CascadeSet& cs, double stretch_mean, Rng& rng);

struct SyntheticDataset {
  Graph graph;
  CascadeSet original;
  CascadeSet stretched;
  Clock hidden;
  SampleStats stats;
};

/// Graph, cascades and stretch in one go, fully determined by cfg.seed.
SyntheticDataset simulate(const SimConfig& cfg);

}  // namespace netclock
