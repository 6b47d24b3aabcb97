#include "netclock/graph.hpp"

#include <algorithm>
#include <unordered_set>

namespace netclock {

namespace {

std::uint64_t edge_key(NodeId u, NodeId v) {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Counting-sort style CSR build; `key` selects the grouping endpoint.
template <typename KeyFn, typename ValFn>
void build_csr(std::span<const Edge> edges, std::size_t n, KeyFn key, ValFn val,
               std::vector<std::size_t>& offsets, std::vector<NodeId>& values) {
  offsets.assign(n + 1, 0);
  for (const auto& e : edges) {
    ++offsets[key(e) + 1];
  }
  for (std::size_t i = 0; i < n; ++i) {
    offsets[i + 1] += offsets[i];
  }
  values.assign(edges.size(), 0);
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& e : edges) {
    values[fill[key(e)]++] = val(e);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(values.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              values.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]));
  }
}

}  // namespace

Graph Graph::from_edges(std::span<const Edge> edges, std::size_t min_nodes) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  std::size_t n = min_nodes;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.src == e.dst) {
      throw GraphError("self-loop on node " + std::to_string(e.src) + " at edge index " +
                           std::to_string(i),
                       i);
    }
    if (!seen.insert(edge_key(e.src, e.dst)).second) {
      throw GraphError("duplicate edge (" + std::to_string(e.src) + "," + std::to_string(e.dst) +
                           ") at edge index " + std::to_string(i),
                       i);
    }
    n = std::max<std::size_t>(n, std::max(e.src, e.dst) + std::size_t{1});
  }

  Graph g;
  g.node_count_ = n;
  build_csr(edges, n, [](const Edge& e) { return e.src; }, [](const Edge& e) { return e.dst; },
            g.out_offsets_, g.out_targets_);
  build_csr(edges, n, [](const Edge& e) { return e.dst; }, [](const Edge& e) { return e.src; },
            g.in_offsets_, g.in_sources_);
  for (std::size_t v = 0; v < n; ++v) {
    g.max_in_degree_ = std::max(g.max_in_degree_, g.in_offsets_[v + 1] - g.in_offsets_[v]);
  }
  return g;
}

void Graph::check(NodeId v) const {
  if (v >= node_count_) {
    throw std::out_of_range("node " + std::to_string(v) + " out of range (node_count " +
                            std::to_string(node_count_) + ")");
  }
}

std::span<const NodeId> Graph::in_neighbors(NodeId v) const {
  check(v);
  return {in_sources_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::span<const NodeId> Graph::out_neighbors(NodeId v) const {
  check(v);
  return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto out = out_neighbors(u);
  return std::binary_search(out.begin(), out.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count());
  for (NodeId u = 0; u < node_count_; ++u) {
    for (NodeId v : out_neighbors(u)) {
      result.push_back({u, v});
    }
  }
  return result;
}

Graph load_graph(std::span<const Edge> edges) { return Graph::from_edges(edges); }

std::span<const NodeId> in_neighbors(const Graph& g, NodeId v) { return g.in_neighbors(v); }

}  // namespace netclock
