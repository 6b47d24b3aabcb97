#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "netclock/graph.hpp"
#include "netclock/timeline.hpp"

namespace netclock {

using CascadeId = std::int64_t;

struct Activation {
  NodeId node;
  Timestamp time;
  friend bool operator==(const Activation&, const Activation&) = default;
};

/// One line of the cascade text format.
struct ActivationRecord {
  CascadeId cascade;
  NodeId node;
  Timestamp time;
};

class CascadeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/*
  A single diffusion episode. Activations are kept sorted by (time, node);
  a node appears at most once.
*/
class Cascade {
 public:
  Cascade() = default;
  /// Sorts the activations; throws CascadeError if a node repeats.
  Cascade(CascadeId id, std::vector<Activation> activations);

  CascadeId id() const noexcept { return id_; }
  std::size_t size() const noexcept { return activations_.size(); }
  bool empty() const noexcept { return activations_.empty(); }
  std::span<const Activation> activations() const noexcept { return activations_; }

  /// X(v), or nullopt when v is not part of the cascade.
  std::optional<Timestamp> time_of(NodeId v) const;
  /// Position of v in activations(), or nullopt.
  std::optional<std::size_t> index_of(NodeId v) const;

  /// A(X,t): activations at exactly time t.
  std::span<const Activation> at(Timestamp t) const;
  /// Activations with time in [iv.start, iv.end].
  std::span<const Activation> within(const Interval& iv) const;

  friend bool operator==(const Cascade& a, const Cascade& b) {
    return a.id_ == b.id_ && a.activations_ == b.activations_;
  }

 private:
  CascadeId id_ = 0;
  std::vector<Activation> activations_;
  std::vector<std::uint32_t> by_node_;  // indices into activations_, sorted by node
};

/*
  Cascade dataset over a shared internal timeline 1..horizon. Internal times
  are derived from external ones by shifting the first activation to 1 and,
  after compress_timeline(), by dropping ticks without activations. The
  mapping back to external times is retained (external_time()).
*/
class CascadeSet {
 public:
  CascadeSet() = default;

  /// Groups records into cascades (ordered by cascade id), validates node ids
  /// against `node_count` and normalizes so the earliest time becomes 1.
  static CascadeSet from_records(std::span<const ActivationRecord> records,
                                 std::size_t node_count);
  /// Same, starting from already grouped cascades carrying external times.
  static CascadeSet from_cascades(std::vector<Cascade> cascades, std::size_t node_count);

  const std::vector<Cascade>& cascades() const noexcept { return cascades_; }
  std::size_t cascade_count() const noexcept { return cascades_.size(); }
  const Cascade& cascade(std::size_t index) const { return cascades_.at(index); }
  /// Lookup by cascade id; throws std::out_of_range when absent.
  const Cascade& by_id(CascadeId id) const;
  std::optional<std::size_t> index_of(CascadeId id) const;

  /// T: the last internal activation time (0 for an empty set).
  Timestamp horizon() const noexcept { return horizon_; }
  /// |X| summed over all cascades.
  std::size_t total_activations() const noexcept { return total_; }
  /// Global index of the first activation of cascade `index`.
  std::size_t activation_offset(std::size_t index) const { return offsets_.at(index); }
  std::size_t node_count() const noexcept { return node_count_; }

  bool compressed() const noexcept { return !compressed_map_.empty(); }
  /// External time of internal tick t (1 <= t <= horizon).
  Timestamp external_time(Timestamp t) const;
  /// Smallest internal tick whose external time is >= ext, or horizon()+1.
  Timestamp internal_ceil(Timestamp ext) const;

  /// Flattened (cascade id, node, external time) records in storage order.
  std::vector<ActivationRecord> records() const;

  friend bool operator==(const CascadeSet& a, const CascadeSet& b) {
    return a.cascades_ == b.cascades_ && a.horizon_ == b.horizon_ &&
           a.offset_ == b.offset_ && a.compressed_map_ == b.compressed_map_;
  }

 private:
  friend CascadeSet compress_timeline(const CascadeSet& cs);
  void finalize();

  std::vector<Cascade> cascades_;
  std::vector<std::size_t> offsets_;
  std::size_t node_count_ = 0;
  std::size_t total_ = 0;
  Timestamp horizon_ = 0;
  Timestamp offset_ = 0;                  // external = internal + offset_ (dense case)
  std::vector<Timestamp> compressed_map_;  // external time of internal t at [t-1]
};

CascadeSet load_cascades(std::span<const ActivationRecord> records, const Graph& g);

/// Drops ticks without any activation; remaining ticks renumbered 1..T'.
CascadeSet compress_timeline(const CascadeSet& cs);

/// A(X, iv) = union of A(X,t) over the interval, as node ids.
std::vector<NodeId> active_at(const CascadeSet& cs, CascadeId cascade, const Interval& iv);

}  // namespace netclock
