#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"
#include "netclock/completion.hpp"
#include "netclock/improvement_model.hpp"
#include "netclock/io.hpp"
#include "netclock/likelihood.hpp"
#include "netclock/multiclock.hpp"
#include "netclock/oracle.hpp"
#include "netclock/simgen.hpp"
#include "netclock/size_features.hpp"
#include "netclock/solver_dp.hpp"
#include "netclock/solver_greedy.hpp"

namespace netclock::cli {

namespace fs = std::filesystem;

namespace {

/// Wrong flags or values detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelOptions {
  double pe = 0.001;
  double pn = 0.1;
  std::string policy = "contagious_only";

  void attach(CLI::App* cmd) {
    cmd->add_option("--pe", pe, "spontaneous activation probability")->capture_default_str();
    cmd->add_option("--pn", pn, "neighbor activation probability")->capture_default_str();
    cmd->add_option("--policy", policy, "non-activation terms: none, contagious_only, full")
        ->capture_default_str();
  }

  ICParams params(std::ostream& err) const {
    ICParams p;
    try {
      p = ICParams::make(pe, pn);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (p.spontaneous_dominates()) {
      err << "warning: p_e >= p_n; the model assumes spontaneous activation is rare\n";
    }
    return p;
  }

  NonActivationPolicy parsed_policy() const {
    try {
      return parse_policy(policy);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

void write_node_map_next_to(const std::string& out_path, const NodeMap& nodes) {
  if (out_path.empty()) {
    return;
  }
  std::ostringstream ss;
  nodes.write(ss);
  write_text_file(fs::path(out_path).parent_path() / "nodes.map", ss.str());
}

std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> rates;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double r = std::stod(item, &used);
      if (used != item.size() || !(r >= 0.0 && r < 1.0)) {
        throw std::invalid_argument(item);
      }
      rates.push_back(r);
    } catch (const std::exception&) {
      throw UsageError("invalid drop rate '" + item + "'; expected values in [0,1)");
    }
  }
  if (rates.empty()) {
    throw UsageError("no drop rates given");
  }
  return rates;
}

// ---- detect ---------------------------------------------------------------

struct DetectArgs {
  std::string graph, cascades, algo = "dp", out;
  ModelOptions model;
};

int detect(const DetectArgs& a, std::ostream& out, std::ostream& err) {
  const auto p = a.model.params(err);
  const auto policy = a.model.parsed_policy();
  if (a.algo != "dp" && a.algo != "greedy" && a.algo != "oracle") {
    throw UsageError("--algo must be dp, greedy or oracle");
  }
  const Dataset data = load_dataset(a.graph, a.cascades);
  const CascadeSet cs = compress_timeline(data.cascades);
  const auto start = std::chrono::steady_clock::now();
  ClockSolution sol;
  try {
    if (a.algo == "dp") {
      sol = solve_oc_dp(data.graph, cs, p, policy);
    } else if (a.algo == "greedy") {
      sol = solve_oc_greedy(data.graph, cs, p, policy);
    } else {
      sol = oracle_oc(data.graph, cs, p, policy);
    }
  } catch (const HorizonLimitError& e) {
    err << "error: " << e.what() << " (try --algo greedy)\n";
    return kExitFailure;
  }
  const double wall = seconds_since(start);
  const double ll_max = loglik_clock_max(data.graph, cs, p, policy);
  auto j = clock_to_json(sol.clock, cs, sol.improvement);
  j["loglik"] = ll_max + sol.improvement;
  j["loglik_max"] = ll_max;
  j["interval_count"] = sol.clock.interval_count();
  j["algorithm"] = a.algo;
  j["policy"] = std::string(to_string(policy));
  j["wall_time_s"] = wall;
  emit(j.dump(2) + "\n", a.out, out);
  write_node_map_next_to(a.out, data.nodes);
  return kExitOk;
}

// ---- detect-k -------------------------------------------------------------

struct DetectKArgs {
  std::string graph, cascades, inner = "dp", out;
  std::size_t k = 1;
  ModelOptions model;
};

int detect_k(const DetectKArgs& a, std::ostream& out, std::ostream& err) {
  const auto p = a.model.params(err);
  const auto policy = a.model.parsed_policy();
  InnerSolver inner;
  try {
    inner = parse_inner_solver(a.inner);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.k < 1) {
    throw UsageError("--k must be at least 1");
  }
  const Dataset data = load_dataset(a.graph, a.cascades);
  const CascadeSet cs = compress_timeline(data.cascades);
  const auto start = std::chrono::steady_clock::now();
  MultiClockSolution sol;
  try {
    sol = solve_koc(data.graph, cs, a.k, p, policy, inner);
  } catch (const HorizonLimitError& e) {
    err << "error: " << e.what() << " (try --inner greedy)\n";
    return kExitFailure;
  }
  auto j = clock_set_to_json(sol, cs, data.nodes);
  j["inner"] = a.inner;
  j["k"] = a.k;
  j["policy"] = std::string(to_string(policy));
  j["wall_time_s"] = seconds_since(start);
  emit(j.dump(2) + "\n", a.out, out);
  write_node_map_next_to(a.out, data.nodes);
  return kExitOk;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  SimConfig cfg;
  double pe = 0.001;
  double pn = 0.1;
  std::string out_dir = ".";
};

int simulate_cmd(SimulateArgs a, std::ostream& out, std::ostream& err) {
  try {
    a.cfg.params = ICParams::make(a.pe, a.pn);
    a.cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (a.cfg.params.spontaneous_dominates()) {
    err << "warning: p_e >= p_n; the model assumes spontaneous activation is rare\n";
  }
  const auto data = simulate(a.cfg);
  const fs::path dir = a.out_dir;
  std::ostringstream graph_text, cascades_text, original_text;
  write_edge_list(graph_text, data.graph);
  write_cascades(cascades_text, data.stretched);
  write_cascades(original_text, data.original);
  write_text_file(dir / "graph.tsv", graph_text.str());
  write_text_file(dir / "cascades.tsv", cascades_text.str());
  write_text_file(dir / "cascades_original.tsv", original_text.str());
  const ImprovementModel model(data.graph, data.stretched, a.cfg.params,
                               NonActivationPolicy::contagious_only);
  auto hidden = clock_to_json(data.hidden, data.stretched, model.evaluate(data.hidden));
  write_text_file(dir / "hidden_clock.json", hidden.dump(2) + "\n");
  out << "nodes " << data.graph.node_count() << ", edges " << data.graph.edge_count()
      << ", cascades " << data.stretched.cascade_count() << ", activations "
      << data.stretched.total_activations() << ", horizon " << data.stretched.horizon()
      << ", sampling attempts " << data.stats.attempts << "\n";
  return kExitOk;
}

// ---- complete -------------------------------------------------------------

struct CompleteArgs {
  std::string graph, cascades, clock, rates = "0.1,0.2,0.3,0.4,0.5", out;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::size_t max_chain = CompletionOptions{}.max_chain;
};

int complete_cmd(const CompleteArgs& a, std::ostream& out, std::ostream&) {
  const auto rates = parse_rates(a.rates);
  const Dataset data = load_dataset(a.graph, a.cascades);
  const Clock clock = clock_from_json(read_json_file(a.clock), data.cascades);
  CompletionOptions options;
  options.max_chain = a.max_chain;
  const auto rows =
      completion_batch(data.graph, data.cascades, clock, rates, a.seed, a.threads, options);
  std::ostringstream ss;
  write_completion_csv(ss, rows);
  emit(ss.str(), a.out, out);
  return kExitOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalArgs {
  std::string graph, cascades, compare = "dp,greedy,agg1..agg10,min", out;
  ModelOptions model;
};

struct EvalRow {
  std::string method;
  double improvement;
  std::size_t intervals;
};

std::vector<std::string> expand_methods(const std::string& text) {
  std::vector<std::string> methods;
  std::stringstream ss(text);
  std::string item;
  auto width = [](const std::string& s) -> long {
    if (s.rfind("agg", 0) != 0 || s.size() == 3) {
      throw UsageError("unknown comparison method '" + s + "'");
    }
    try {
      std::size_t used = 0;
      const long w = std::stol(s.substr(3), &used);
      if (used != s.size() - 3 || w < 1) {
        throw std::invalid_argument(s);
      }
      return w;
    } catch (const std::exception&) {
      throw UsageError("invalid window in '" + s + "'");
    }
  };
  while (std::getline(ss, item, ',')) {
    if (item == "dp" || item == "greedy" || item == "oracle" || item == "min" || item == "max") {
      methods.push_back(item);
      continue;
    }
    const auto dots = item.find("..");
    if (dots != std::string::npos) {
      const long lo = width(item.substr(0, dots));
      std::string hi_text = item.substr(dots + 2);
      if (hi_text.rfind("agg", 0) != 0) {
        hi_text = "agg" + hi_text;
      }
      const long hi = width(hi_text);
      if (hi < lo) {
        throw UsageError("empty window range '" + item + "'");
      }
      for (long w = lo; w <= hi; ++w) {
        methods.push_back("agg" + std::to_string(w));
      }
      continue;
    }
    width(item);
    methods.push_back(item);
  }
  if (methods.empty()) {
    throw UsageError("--compare lists no methods");
  }
  return methods;
}

int eval_cmd(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  const auto p = a.model.params(err);
  const auto policy = a.model.parsed_policy();
  const auto methods = expand_methods(a.compare);
  const Dataset data = load_dataset(a.graph, a.cascades);
  const CascadeSet& raw = data.cascades;
  const CascadeSet compact = compress_timeline(raw);
  const Timestamp T = std::max<Timestamp>(raw.horizon(), 1);
  std::optional<ImprovementModel> raw_model;
  auto raw_eval = [&](const Clock& c) {
    if (!raw_model) {
      raw_model.emplace(data.graph, raw, p, policy);
    }
    return raw_model->evaluate(c);
  };

  std::vector<EvalRow> rows;
  for (const auto& m : methods) {
    if (m == "dp" || m == "greedy" || m == "oracle") {
      ClockSolution sol;
      try {
        sol = m == "dp"       ? solve_oc_dp(data.graph, compact, p, policy)
              : m == "greedy" ? solve_oc_greedy(data.graph, compact, p, policy)
                              : oracle_oc(data.graph, compact, p, policy);
      } catch (const HorizonLimitError& e) {
        err << "error: " << e.what() << " (drop dp from --compare)\n";
        return kExitFailure;
      }
      rows.push_back({m, sol.improvement, sol.clock.interval_count()});
    } else if (m == "min" || m == "max") {
      const Clock c = m == "min" ? clock_min(T) : clock_max(T);
      rows.push_back({m, raw_eval(c), c.interval_count()});
    } else {
      const Clock c = homogeneous_clock(T, std::stol(m.substr(3)));
      rows.push_back({m, raw_eval(c), c.interval_count()});
    }
  }
  double best = rows.front().improvement;
  for (const auto& r : rows) {
    best = std::max(best, r.improvement);
  }
  std::ostringstream ss;
  ss << "method,improvement,ratio_to_best,intervals\n" << std::setprecision(12);
  for (const auto& r : rows) {
    const double ratio = best > 0.0 ? r.improvement / best : (r.improvement == best ? 1.0 : 0.0);
    ss << r.method << ',' << r.improvement << ',' << ratio << ',' << r.intervals << '\n';
  }
  emit(ss.str(), a.out, out);
  return kExitOk;
}

// ---- features -------------------------------------------------------------

struct FeaturesArgs {
  std::string graph, cascades, clock, out;
  std::size_t m = 10;
  double alpha = 1.5;
};

int features_cmd(const FeaturesArgs& a, std::ostream& out, std::ostream&) {
  if (a.m < 2) {
    throw UsageError("--m must be at least 2");
  }
  const Dataset data = load_dataset(a.graph, a.cascades);
  const Timestamp T = std::max<Timestamp>(data.cascades.horizon(), 1);
  const Clock clock =
      a.clock.empty() ? clock_min(T) : clock_from_json(read_json_file(a.clock), data.cascades);
  const auto rows = extract_size_features(data.cascades, clock, a.m, a.alpha);
  std::ostringstream ss;
  write_features_csv(ss, rows);
  emit(ss.str(), a.out, out);
  return kExitOk;
}

void add_inputs(CLI::App* cmd, std::string& graph, std::string& cascades) {
  cmd->add_option("graph", graph, "edge list file (src<TAB>dst)")->required();
  cmd->add_option("cascades", cascades, "cascade file (cascade_id<TAB>node<TAB>time)")->required();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Network clock detection for diffusion cascades", "netclock"};
  app.require_subcommand(1);

  DetectArgs detect_args;
  auto* detect_cmd = app.add_subcommand("detect", "find the single best clock");
  add_inputs(detect_cmd, detect_args.graph, detect_args.cascades);
  detect_cmd->add_option("--algo", detect_args.algo, "dp, greedy or oracle")->capture_default_str();
  detect_cmd->add_option("--out", detect_args.out, "clock JSON output (stdout when omitted)");
  detect_args.model.attach(detect_cmd);

  DetectKArgs k_args;
  auto* k_cmd = app.add_subcommand("detect-k", "greedily select up to k clocks");
  add_inputs(k_cmd, k_args.graph, k_args.cascades);
  k_cmd->add_option("--k", k_args.k, "number of clocks")->capture_default_str();
  k_cmd->add_option("--inner", k_args.inner, "single-clock solver: dp or greedy")
      ->capture_default_str();
  k_cmd->add_option("--out", k_args.out, "clock set JSON output (stdout when omitted)");
  k_args.model.attach(k_cmd);

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "generate a stretched synthetic dataset");
  sim_cmd->add_option("--nodes", sim_args.cfg.nodes)->capture_default_str();
  sim_cmd->add_option("--attachment", sim_args.cfg.attachment)->capture_default_str();
  sim_cmd->add_option("--cascades", sim_args.cfg.cascade_count)->capture_default_str();
  sim_cmd->add_option("--min-size", sim_args.cfg.min_cascade_size)->capture_default_str();
  sim_cmd->add_option("--stretch-mean", sim_args.cfg.stretch_mean)->capture_default_str();
  sim_cmd->add_option("--max-steps", sim_args.cfg.max_steps)->capture_default_str();
  sim_cmd->add_option("--max-attempts", sim_args.cfg.max_attempts)->capture_default_str();
  sim_cmd->add_flag("--spontaneous", sim_args.cfg.spontaneous, "allow spontaneous activations");
  sim_cmd->add_option("--seed", sim_args.cfg.seed)->capture_default_str();
  sim_cmd->add_option("--threads", sim_args.cfg.threads)->capture_default_str();
  sim_cmd->add_option("--pe", sim_args.pe)->capture_default_str();
  sim_cmd->add_option("--pn", sim_args.pn)->capture_default_str();
  sim_cmd->add_option("--out-dir", sim_args.out_dir)->capture_default_str();

  CompleteArgs complete_args;
  auto* complete_sub = app.add_subcommand("complete", "hide-and-recover cascade completion");
  add_inputs(complete_sub, complete_args.graph, complete_args.cascades);
  complete_sub->add_option("clock", complete_args.clock, "clock JSON")->required();
  complete_sub->add_option("--drop-rates", complete_args.rates, "comma-separated rates in [0,1)")
      ->capture_default_str();
  complete_sub->add_option("--seed", complete_args.seed)->capture_default_str();
  complete_sub->add_option("--threads", complete_args.threads)->capture_default_str();
  complete_sub->add_option("--max-chain", complete_args.max_chain)->capture_default_str();
  complete_sub->add_option("--out", complete_args.out, "CSV output (stdout when omitted)");

  EvalArgs eval_args;
  auto* eval_sub = app.add_subcommand("eval", "compare clock detection methods");
  add_inputs(eval_sub, eval_args.graph, eval_args.cascades);
  eval_sub->add_option("--compare", eval_args.compare,
                       "methods: dp, greedy, oracle, min, max, aggW, aggA..aggB")
      ->capture_default_str();
  eval_sub->add_option("--out", eval_args.out, "CSV output (stdout when omitted)");
  eval_args.model.attach(eval_sub);

  FeaturesArgs feat_args;
  auto* feat_sub = app.add_subcommand("features", "temporal features for size prediction");
  add_inputs(feat_sub, feat_args.graph, feat_args.cascades);
  feat_sub->add_option("--clock", feat_args.clock, "clock JSON (original timeline when omitted)");
  feat_sub->add_option("--m", feat_args.m, "prefix length")->capture_default_str();
  feat_sub->add_option("--alpha", feat_args.alpha, "size threshold factor")->capture_default_str();
  feat_sub->add_option("--out", feat_args.out, "CSV output (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) {
      err << app.get_subcommands().front()->help();
    } else {
      err << app.help();
    }
    return kExitUsage;
  }

  try {
    if (detect_cmd->parsed()) {
      return detect(detect_args, out, err);
    }
    if (k_cmd->parsed()) {
      return detect_k(k_args, out, err);
    }
    if (sim_cmd->parsed()) {
      return simulate_cmd(sim_args, out, err);
    }
    if (complete_sub->parsed()) {
      return complete_cmd(complete_args, out, err);
    }
    if (eval_sub->parsed()) {
      return eval_cmd(eval_args, out, err);
    }
    if (feat_sub->parsed()) {
      return features_cmd(feat_args, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.path1().string() << ": cannot open file\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace netclock::cli
