#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"
#include "netclock/completion.hpp"
#include "netclock/graph.hpp"
#include "netclock/multiclock.hpp"
#include "netclock/size_features.hpp"

namespace netclock {

/// Malformed input. line() is 1-based (0 when not tied to a line).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// External node labels <-> dense ids, in order of first appearance.
class NodeMap {
 public:
  NodeId intern(const std::string& label);
  std::optional<NodeId> find(const std::string& label) const;
  const std::string& label(NodeId id) const { return labels_.at(id); }
  std::size_t size() const noexcept { return labels_.size(); }

  /// `dense<TAB>label` per line.
  void write(std::ostream& out) const;
  static NodeMap read(std::istream& in);

 private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
};

/// `src<TAB>dst` per line (any whitespace accepted); blank and '#' lines skipped.
/// When `lines` is given it receives the source line of every returned edge.
std::vector<Edge> read_edge_list(std::istream& in, NodeMap& nodes,
                                 std::vector<std::size_t>* lines = nullptr);
/// `cascade_id<TAB>node<TAB>time` per line. Nodes must already be known.
std::vector<ActivationRecord> read_cascade_records(std::istream& in, const NodeMap& nodes);

void write_edge_list(std::ostream& out, const Graph& g, const NodeMap* nodes = nullptr);
void write_cascades(std::ostream& out, const CascadeSet& cs, const NodeMap* nodes = nullptr);

/// Loads a graph file and the cascades over it. Missing files raise
/// std::filesystem::filesystem_error, malformed content ParseError.
struct Dataset {
  NodeMap nodes;
  Graph graph;
  CascadeSet cascades;
};
Dataset load_dataset(const std::filesystem::path& graph_file,
                     const std::filesystem::path& cascade_file);

/*
  Clock JSON in external times:
    {"boundaries": [...], "intervals": [[s, e], ...], "improvement": x}
  An interval ends one tick before the next interval's external start.
*/
nlohmann::json clock_to_json(const Clock& clock, const CascadeSet& cs, double improvement);
/// Maps external boundaries onto the dataset's internal timeline; each
/// boundary moves to the first internal tick at or after it.
Clock clock_from_json(const nlohmann::json& j, const CascadeSet& cs);

/// Clock set JSON: {"clocks": [clock...], "assignment": {label: index},
/// "per_clock_gain": [...], "total": x}
nlohmann::json clock_set_to_json(const MultiClockSolution& solution, const CascadeSet& cs,
                                 const NodeMap& nodes);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

void write_completion_csv(std::ostream& out, std::span<const CompletionRow> rows);
void write_features_csv(std::ostream& out, std::span<const SizeFeatureRow> rows);

}  // namespace netclock
