#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace netclock {

using NodeId = std::uint32_t;

struct Edge {
  NodeId src;
  NodeId dst;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Rejected edge list entry. `position()` is the 0-based index of the
/// offending edge in the input sequence.
class GraphError : public std::invalid_argument {
 public:
  GraphError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/*
  Directed unweighted graph in compressed adjacency form. Both directions are
  stored so that in-neighbor scans (who can influence v) and out-neighbor
  scans (whom u can influence) are contiguous. Neighbor lists are sorted.
  Immutable after construction.
*/
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge sequence. node_count is max(id)+1, or `min_nodes`
  /// when larger (isolated trailing nodes). Duplicate edges and self-loops
  /// raise GraphError carrying the index of the offending edge.
  static Graph from_edges(std::span<const Edge> edges, std::size_t min_nodes = 0);

  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return out_targets_.size(); }

  std::span<const NodeId> in_neighbors(NodeId v) const;
  std::span<const NodeId> out_neighbors(NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const;
  std::size_t max_in_degree() const noexcept { return max_in_degree_; }

  /// All edges ordered by (src, dst).
  std::vector<Edge> edges() const;

 private:
  void check(NodeId v) const;

  std::size_t node_count_ = 0;
  std::size_t max_in_degree_ = 0;
  std::vector<std::size_t> out_offsets_{0};
  std::vector<NodeId> out_targets_;
  std::vector<std::size_t> in_offsets_{0};
  std::vector<NodeId> in_sources_;
};

Graph load_graph(std::span<const Edge> edges);

/// N(v) = {u | (u,v) in E}.
std::span<const NodeId> in_neighbors(const Graph& g, NodeId v);

}  // namespace netclock
