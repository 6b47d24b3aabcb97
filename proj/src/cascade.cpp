#include "netclock/cascade.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace netclock {

Cascade::Cascade(CascadeId id, std::vector<Activation> activations)
    : id_(id), activations_(std::move(activations)) {
  std::sort(activations_.begin(), activations_.end(), [](const Activation& a, const Activation& b) {
    return a.time != b.time ? a.time < b.time : a.node < b.node;
  });
  by_node_.resize(activations_.size());
  std::iota(by_node_.begin(), by_node_.end(), 0U);
  std::sort(by_node_.begin(), by_node_.end(), [this](std::uint32_t a, std::uint32_t b) {
    return activations_[a].node < activations_[b].node;
  });
  for (std::size_t i = 1; i < by_node_.size(); ++i) {
    if (activations_[by_node_[i]].node == activations_[by_node_[i - 1]].node) {
      throw CascadeError("node " + std::to_string(activations_[by_node_[i]].node) +
                         " repeated in cascade " + std::to_string(id_));
    }
  }
}

std::optional<std::size_t> Cascade::index_of(NodeId v) const {
  auto it = std::lower_bound(by_node_.begin(), by_node_.end(), v,
                             [this](std::uint32_t idx, NodeId n) { return activations_[idx].node < n; });
  if (it == by_node_.end() || activations_[*it].node != v) {
    return std::nullopt;
  }
  return *it;
}

std::optional<Timestamp> Cascade::time_of(NodeId v) const {
  auto idx = index_of(v);
  if (!idx) {
    return std::nullopt;
  }
  return activations_[*idx].time;
}

std::span<const Activation> Cascade::within(const Interval& iv) const {
  auto lo = std::lower_bound(activations_.begin(), activations_.end(), iv.start,
                             [](const Activation& a, Timestamp t) { return a.time < t; });
  auto hi = std::upper_bound(lo, activations_.end(), iv.end,
                             [](Timestamp t, const Activation& a) { return t < a.time; });
  return {activations_.data() + (lo - activations_.begin()), static_cast<std::size_t>(hi - lo)};
}

std::span<const Activation> Cascade::at(Timestamp t) const { return within(Interval{t, t}); }

CascadeSet CascadeSet::from_records(std::span<const ActivationRecord> records,
                                    std::size_t node_count) {
  std::map<CascadeId, std::vector<Activation>> grouped;
  for (const auto& r : records) {
    grouped[r.cascade].push_back({r.node, r.time});
  }
  std::vector<Cascade> cascades;
  cascades.reserve(grouped.size());
  for (auto& [id, acts] : grouped) {
    cascades.emplace_back(id, std::move(acts));
  }
  return from_cascades(std::move(cascades), node_count);
}

CascadeSet CascadeSet::from_cascades(std::vector<Cascade> cascades, std::size_t node_count) {
  std::sort(cascades.begin(), cascades.end(),
            [](const Cascade& a, const Cascade& b) { return a.id() < b.id(); });
  for (std::size_t i = 1; i < cascades.size(); ++i) {
    if (cascades[i].id() == cascades[i - 1].id()) {
      throw CascadeError("cascade id " + std::to_string(cascades[i].id()) + " appears twice");
    }
  }
  Timestamp min_time = std::numeric_limits<Timestamp>::max();
  for (const auto& c : cascades) {
    for (const auto& a : c.activations()) {
      if (a.node >= node_count) {
        throw CascadeError("unknown node " + std::to_string(a.node) + " in cascade " +
                           std::to_string(c.id()));
      }
      min_time = std::min(min_time, a.time);
    }
  }
  CascadeSet cs;
  cs.node_count_ = node_count;
  if (min_time == std::numeric_limits<Timestamp>::max()) {
    cs.cascades_ = std::move(cascades);
    cs.finalize();
    return cs;
  }
  cs.offset_ = min_time - 1;
  cs.cascades_.reserve(cascades.size());
  for (auto& c : cascades) {
    std::vector<Activation> shifted(c.activations().begin(), c.activations().end());
    for (auto& a : shifted) {
      a.time -= cs.offset_;
    }
    cs.cascades_.emplace_back(c.id(), std::move(shifted));
  }
  cs.finalize();
  return cs;
}

void CascadeSet::finalize() {
  offsets_.clear();
  total_ = 0;
  horizon_ = 0;
  for (const auto& c : cascades_) {
    offsets_.push_back(total_);
    total_ += c.size();
    if (!c.empty()) {
      horizon_ = std::max(horizon_, c.activations().back().time);
    }
  }
}

const Cascade& CascadeSet::by_id(CascadeId id) const {
  auto idx = index_of(id);
  if (!idx) {
    throw std::out_of_range("unknown cascade id " + std::to_string(id));
  }
  return cascades_[*idx];
}

std::optional<std::size_t> CascadeSet::index_of(CascadeId id) const {
  auto it = std::lower_bound(cascades_.begin(), cascades_.end(), id,
                             [](const Cascade& c, CascadeId v) { return c.id() < v; });
  if (it == cascades_.end() || it->id() != id) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(it - cascades_.begin());
}

Timestamp CascadeSet::external_time(Timestamp t) const {
  if (t < 1 || t > horizon_) {
    throw std::out_of_range("time " + std::to_string(t) + " outside [1," +
                            std::to_string(horizon_) + "]");
  }
  return compressed() ? compressed_map_[static_cast<std::size_t>(t - 1)] : t + offset_;
}

Timestamp CascadeSet::internal_ceil(Timestamp ext) const {
  if (!compressed()) {
    return std::clamp<Timestamp>(ext - offset_, 1, horizon_ + 1);
  }
  auto it = std::lower_bound(compressed_map_.begin(), compressed_map_.end(), ext);
  return static_cast<Timestamp>(it - compressed_map_.begin()) + 1;
}

std::vector<ActivationRecord> CascadeSet::records() const {
  std::vector<ActivationRecord> out;
  out.reserve(total_);
  for (const auto& c : cascades_) {
    for (const auto& a : c.activations()) {
      out.push_back({c.id(), a.node, external_time(a.time)});
    }
  }
  return out;
}

CascadeSet load_cascades(std::span<const ActivationRecord> records, const Graph& g) {
  for (const auto& r : records) {
    if (r.time < 1) {
      throw CascadeError("non-positive time " + std::to_string(r.time) + " in cascade " +
                         std::to_string(r.cascade));
    }
  }
  return CascadeSet::from_records(records, g.node_count());
}

CascadeSet compress_timeline(const CascadeSet& cs) {
  const auto T = static_cast<std::size_t>(cs.horizon());
  std::vector<char> used(T + 1, 0);
  for (const auto& c : cs.cascades()) {
    for (const auto& a : c.activations()) {
      used[static_cast<std::size_t>(a.time)] = 1;
    }
  }
  std::vector<Timestamp> remap(T + 1, 0);
  std::vector<Timestamp> external;
  for (std::size_t t = 1; t <= T; ++t) {
    if (used[t]) {
      external.push_back(cs.external_time(static_cast<Timestamp>(t)));
      remap[t] = static_cast<Timestamp>(external.size());
    }
  }
  CascadeSet out;
  out.node_count_ = cs.node_count_;
  out.offset_ = cs.offset_;
  out.cascades_.reserve(cs.cascades_.size());
  for (const auto& c : cs.cascades()) {
    std::vector<Activation> acts(c.activations().begin(), c.activations().end());
    for (auto& a : acts) {
      a.time = remap[static_cast<std::size_t>(a.time)];
    }
    out.cascades_.emplace_back(c.id(), std::move(acts));
  }
  // A dense timeline stays uncompressed: the identity mapping is implied.
  if (external.size() != T) {
    out.compressed_map_ = std::move(external);
  } else if (cs.compressed()) {
    out.compressed_map_ = cs.compressed_map_;
  }
  out.finalize();
  return out;
}

std::vector<NodeId> active_at(const CascadeSet& cs, CascadeId cascade, const Interval& iv) {
  const auto& c = cs.by_id(cascade);
  std::vector<NodeId> nodes;
  for (const auto& a : c.within(iv)) {
    nodes.push_back(a.node);
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

}  // namespace netclock
