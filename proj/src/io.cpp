#include "netclock/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace netclock {

NodeId NodeMap::intern(const std::string& label) {
  const auto [it, inserted] = ids_.emplace(label, static_cast<NodeId>(labels_.size()));
  if (inserted) {
    labels_.push_back(label);
  }
  return it->second;
}

std::optional<NodeId> NodeMap::find(const std::string& label) const {
  const auto it = ids_.find(label);
  if (it == ids_.end()) {
    return std::nullopt;
  }
  return it->second;
}

void NodeMap::write(std::ostream& out) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    out << i << '\t' << labels_[i] << '\n';
  }
}

namespace {

// Splits a data line into whitespace-separated fields; false for blank and
// comment lines.
bool fields_of(const std::string& line, std::vector<std::string>& fields) {
  fields.clear();
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
    ++i;
  }
  if (i == line.size() || line[i] == '#') {
    return false;
  }
  std::istringstream ss(line);
  std::string f;
  while (ss >> f) {
    fields.push_back(f);
  }
  return true;
}

template <typename Int>
Int parse_int(const std::string& text, std::size_t line, const char* what) {
  Int value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(std::string("invalid ") + what + " '" + text + "'", line);
  }
  return value;
}

}  // namespace

NodeMap NodeMap::read(std::istream& in) {
  NodeMap map;
  std::string line;
  std::vector<std::string> f;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!fields_of(line, f)) {
      continue;
    }
    if (f.size() != 2) {
      throw ParseError("expected 'dense<TAB>label'", n);
    }
    const auto id = parse_int<std::size_t>(f[0], n, "dense id");
    if (id != map.size()) {
      throw ParseError("dense ids must be consecutive from 0", n);
    }
    if (map.find(f[1])) {
      throw ParseError("label '" + f[1] + "' listed twice", n);
    }
    map.intern(f[1]);
  }
  return map;
}

std::vector<Edge> read_edge_list(std::istream& in, NodeMap& nodes,
                                 std::vector<std::size_t>* lines) {
  std::vector<Edge> edges;
  std::string line;
  std::vector<std::string> f;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!fields_of(line, f)) {
      continue;
    }
    if (f.size() != 2) {
      throw ParseError("expected 'src<TAB>dst', found " + std::to_string(f.size()) + " fields", n);
    }
    edges.push_back({nodes.intern(f[0]), nodes.intern(f[1])});
    if (lines != nullptr) {
      lines->push_back(n);
    }
  }
  return edges;
}

std::vector<ActivationRecord> read_cascade_records(std::istream& in, const NodeMap& nodes) {
  std::vector<ActivationRecord> records;
  std::string line;
  std::vector<std::string> f;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!fields_of(line, f)) {
      continue;
    }
    if (f.size() != 3) {
      throw ParseError("expected 'cascade_id<TAB>node<TAB>time', found " +
                           std::to_string(f.size()) + " fields",
                       n);
    }
    const auto cascade = parse_int<CascadeId>(f[0], n, "cascade id");
    const auto node = nodes.find(f[1]);
    if (!node) {
      throw ParseError("unknown node '" + f[1] + "'", n);
    }
    const auto time = parse_int<Timestamp>(f[2], n, "time");
    if (time < 1) {
      throw ParseError("time must be positive, got " + f[2], n);
    }
    records.push_back({cascade, *node, time});
  }
  return records;
}

void write_edge_list(std::ostream& out, const Graph& g, const NodeMap* nodes) {
  for (const auto& e : g.edges()) {
    if (nodes != nullptr) {
      out << nodes->label(e.src) << '\t' << nodes->label(e.dst) << '\n';
    } else {
      out << e.src << '\t' << e.dst << '\n';
    }
  }
}

void write_cascades(std::ostream& out, const CascadeSet& cs, const NodeMap* nodes) {
  for (const auto& r : cs.records()) {
    out << r.cascade << '\t';
    if (nodes != nullptr) {
      out << nodes->label(r.node);
    } else {
      out << r.node;
    }
    out << '\t' << r.time << '\n';
  }
}

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::filesystem::filesystem_error("cannot open input file", path,
                                            std::make_error_code(std::errc::no_such_file_or_directory));
  }
  return in;
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& graph_file,
                     const std::filesystem::path& cascade_file) {
  Dataset d;
  std::vector<Edge> edges;
  std::vector<std::size_t> lines;
  {
    auto in = open_input(graph_file);
    edges = read_edge_list(in, d.nodes, &lines);
  }
  try {
    d.graph = Graph::from_edges(edges, d.nodes.size());
  } catch (const GraphError& e) {
    const std::size_t line = e.position() < lines.size() ? lines[e.position()] : 0;
    throw ParseError(graph_file.string() + ": " + e.what(), line);
  }
  std::vector<ActivationRecord> records;
  {
    auto in = open_input(cascade_file);
    records = read_cascade_records(in, d.nodes);
  }
  try {
    d.cascades = load_cascades(records, d.graph);
  } catch (const CascadeError& e) {
    throw ParseError(cascade_file.string() + ": " + e.what(), 0);
  }
  return d;
}

nlohmann::json clock_to_json(const Clock& clock, const CascadeSet& cs, double improvement) {
  nlohmann::json j;
  const Timestamp T = cs.horizon();
  auto ext = [&](Timestamp t) { return T == 0 ? t : cs.external_time(t); };
  auto boundaries = nlohmann::json::array();
  for (auto b : clock.boundaries()) {
    boundaries.push_back(ext(b));
  }
  auto intervals = nlohmann::json::array();
  const auto ivs = clock.intervals();
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const Timestamp s = ext(ivs[i].start);
    const Timestamp e = i + 1 < ivs.size() ? ext(ivs[i + 1].start) - 1 : ext(ivs[i].end);
    intervals.push_back({s, e});
  }
  j["boundaries"] = std::move(boundaries);
  j["intervals"] = std::move(intervals);
  j["improvement"] = improvement;
  return j;
}

Clock clock_from_json(const nlohmann::json& j, const CascadeSet& cs) {
  if (!j.is_object() || !j.contains("boundaries") || !j["boundaries"].is_array()) {
    throw ParseError("clock JSON needs a 'boundaries' array", 0);
  }
  const Timestamp T = std::max<Timestamp>(cs.horizon(), 1);
  std::vector<Timestamp> cuts;
  for (const auto& b : j["boundaries"]) {
    if (!b.is_number_integer()) {
      throw ParseError("clock boundaries must be integers", 0);
    }
    const Timestamp internal = cs.horizon() == 0 ? 0 : cs.internal_ceil(b.get<Timestamp>());
    if (internal >= 2 && internal <= T) {
      cuts.push_back(internal);
    }
  }
  return Clock(T, std::move(cuts));
}

nlohmann::json clock_set_to_json(const MultiClockSolution& solution, const CascadeSet& cs,
                                 const NodeMap& nodes) {
  nlohmann::json j;
  auto clocks = nlohmann::json::array();
  for (const auto& c : solution.clocks) {
    clocks.push_back(clock_to_json(c, cs, 0.0));
    clocks.back().erase("improvement");
  }
  for (std::size_t i = 0; i < solution.per_clock_gain.size() && i < clocks.size(); ++i) {
    clocks[i]["gain"] = solution.per_clock_gain[i];
  }
  nlohmann::json assignment = nlohmann::json::object();
  for (std::size_t v = 0; v < solution.assignment.size(); ++v) {
    const std::string label = v < nodes.size() ? nodes.label(static_cast<NodeId>(v))
                                               : std::to_string(v);
    assignment[label] = solution.assignment[v];
  }
  j["clocks"] = std::move(clocks);
  j["assignment"] = std::move(assignment);
  j["per_clock_gain"] = solution.per_clock_gain;
  j["total"] = solution.total;
  return j;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

void write_completion_csv(std::ostream& out, std::span<const CompletionRow> rows) {
  out << "drop_rate,success,precision,recall,f1\n";
  for (const auto& r : rows) {
    out << r.drop_rate << ',' << r.success_rate << ',' << r.precision << ',' << r.recall << ','
        << r.f1 << '\n';
  }
}

void write_features_csv(std::ostream& out, std::span<const SizeFeatureRow> rows) {
  out << "cascade_id,m,size,time_to_mth,mean_gap,median_gap,max_gap,distinct_steps,label\n";
  for (const auto& r : rows) {
    out << r.cascade_id << ',' << r.m << ',' << r.size << ',' << r.time_to_mth << ','
        << r.mean_gap << ',' << r.median_gap << ',' << r.max_gap << ',' << r.distinct_steps << ','
        << (r.large ? "large" : "small") << '\n';
  }
}

}  // namespace netclock
