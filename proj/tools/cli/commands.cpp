#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cli/verify.hpp"
#include "leadsel/centrality.hpp"
#include "leadsel/error.hpp"
#include "leadsel/graph_suite.hpp"
#include "leadsel/joint_centrality.hpp"
#include "leadsel/selection.hpp"
#include "leadsel/simulator.hpp"
#include "leadsel/spectral.hpp"

namespace leadsel::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

LeaderMode parse_mode(const std::string& mode, const std::optional<double>& k) {
  if (mode == "noise-free") {
    return LeaderMode::noise_free();
  }
  if (mode == "gain") {
    if (!k) throw Error(Errc::invalid_argument, "--mode gain requires --k");
    return LeaderMode::gain(*k);
  }
  throw Error(Errc::invalid_argument, "unknown mode '" + mode + "' (noise-free|gain)");
}

json mode_json(const LeaderMode& mode) {
  if (mode.is_noise_free()) return {{"type", "noise-free"}};
  return {{"type", "gain"}, {"k", mode.k()}};
}

json ids_json(const std::vector<NodeId>& ids, int base) {
  json out = json::array();
  for (NodeId v : ids) out.push_back(v + base);
  return out;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

CommandOutput emit(const Report& report, const CommonOptions& common, const std::string& csv) {
  CommandOutput out;
  out.text = common.format == Format::json ? render_json(report) : csv;
  return out;
}

json common_json(const CommonOptions& common) {
  return {{"format", common.format == Format::json ? "json" : "csv"},
          {"index_base", common.index_base}};
}

}  // namespace

std::vector<NodeId> parse_id_list(const std::string& text, int index_base) {
  if (!text.empty() && text.back() == ',') {
    throw Error(Errc::invalid_argument, "empty entry in id list '" + text + "'");
  }
  std::vector<NodeId> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) {
      throw Error(Errc::invalid_argument, "empty entry in id list '" + text + "'");
    }
    item = item.substr(first, last - first + 1);
    std::size_t used = 0;
    long value = 0;
    try {
      value = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || value - index_base < 0) {
      throw Error(Errc::invalid_argument, "bad node id '" + item + "'");
    }
    ids.push_back(static_cast<NodeId>(value - index_base));
  }
  if (ids.empty()) throw Error(Errc::invalid_argument, "empty id list");
  return ids;
}

std::vector<std::pair<NodeId, NodeId>> read_pair_file(const std::string& path, int index_base) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::invalid_argument, "cannot open pair file '" + path + "'");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    long a = 0;
    long b = 0;
    std::string extra;
    if (!(ls >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw Error(Errc::malformed_line, "expected 'u v'", line_no);
    }
    if (!(ls >> b) || (ls >> extra) || a - index_base < 0 || b - index_base < 0) {
      throw Error(Errc::malformed_line, "expected 'u v'", line_no);
    }
    pairs.emplace_back(static_cast<NodeId>(a - index_base), static_cast<NodeId>(b - index_base));
  }
  return pairs;
}

CommandOutput cmd_centrality(const CentralityArgs& args, const CommonOptions& common) {
  const auto start = Clock::now();
  const Graph g = read_edge_list_file(args.graph_file);
  const GraphKernels kernels = compute_kernels(g);
  const CentralityReport c = centrality_report(kernels, args.sigma);
  const int base = common.index_base;
  const int n = g.node_count();

  Report report;
  report.command = "centrality";
  report.parameters = common_json(common);
  report.parameters["full"] = args.full;
  report.parameters["sigma"] = args.sigma;
  report.graph = graph_summary(g, args.graph_file);

  const double best = c.info_centrality.maxCoeff();
  std::vector<NodeId> argmax;
  json nodes = json::array();
  for (int i = 0; i < n; ++i) {
    nodes.push_back({{"node", i + base},
                     {"info_centrality", c.info_centrality(i)},
                     {"lplus_diagonal", c.lplus_diagonal(i)},
                     {"certainty_inverse", c.certainty_inverse(i)}});
    if (c.info_centrality(i) >= best * (1.0 - 1e-9)) argmax.push_back(i);
  }
  report.payload["kirchhoff"] = c.kirchhoff;
  report.payload["nodes"] = std::move(nodes);
  report.payload["argmax_info_centrality"] = ids_json(argmax, base);
  if (args.full) {
    report.payload["resistance"] = matrix_json(c.resistance);
    report.payload["biharmonic"] = matrix_json(c.biharmonic);
  }

  CsvWriter csv;
  if (args.full) {
    csv.row({"i", "j", "resistance", "biharmonic"});
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        csv.row({std::to_string(i + base), std::to_string(j + base),
                 format_number(c.resistance(i, j)), format_number(c.biharmonic(i, j))});
      }
    }
  } else {
    csv.row({"node", "info_centrality", "lplus_diagonal", "certainty_inverse", "kirchhoff"});
    for (int i = 0; i < n; ++i) {
      csv.row({std::to_string(i + base), format_number(c.info_centrality(i)),
               format_number(c.lplus_diagonal(i)), format_number(c.certainty_inverse(i)),
               format_number(c.kirchhoff)});
    }
  }
  report.timing_ms = elapsed_ms(start);
  return emit(report, common, csv.str());
}

CommandOutput cmd_select(const SelectArgs& args, const CommonOptions& common) {
  const auto start = Clock::now();
  const Graph g = read_edge_list_file(args.graph_file);
  const LeaderMode mode = parse_mode(args.mode, args.k);
  SelectionOptions options;
  options.sigma = args.sigma;
  options.budget = args.budget;
  options.threads = common.threads;

  SelectionResult result;
  if (args.method == "exhaustive") {
    result = exhaustive_select(g, args.m, mode, options);
  } else if (args.method == "greedy") {
    result = greedy_select(g, args.m, mode, options);
  } else if (args.method == "oracle") {
    result = oracle_select(g, args.m, mode, options);
  } else if (args.method == "closed-form") {
    if (!args.topology) {
      throw Error(Errc::invalid_argument, "--method closed-form requires --topology cycle|path");
    }
    if (*args.topology == "cycle") {
      if (!is_cycle_graph(g)) {
        throw Error(Errc::topology_mismatch, "input graph is not the unweighted cycle 0-1-...-(n-1)-0");
      }
      if (args.m == 2) {
        result = closed_form_cycle_two(g.node_count(), mode, options);
      } else if (mode.is_noise_free()) {
        result = closed_form_cycle(g.node_count(), args.m, options);
      } else {
        throw Error(Errc::not_applicable,
                    "closed-form cycle placement with gain leaders exists only for m = 2");
      }
    } else if (*args.topology == "path") {
      if (!is_path_graph(g)) {
        throw Error(Errc::topology_mismatch, "input graph is not the unweighted path 0-1-...-(n-1)");
      }
      if (args.m != 2 || !mode.is_noise_free()) {
        throw Error(Errc::not_applicable,
                    "closed-form path placement exists only for m = 2 noise-free leaders");
      }
      result = closed_form_path_two(g.node_count(), options);
    } else {
      throw Error(Errc::invalid_argument, "unknown topology '" + *args.topology + "'");
    }
  } else {
    throw Error(Errc::invalid_argument,
                "unknown method '" + args.method + "' (exhaustive|greedy|closed-form|oracle)");
  }

  const int base = common.index_base;
  Report report;
  report.command = "select";
  report.parameters = common_json(common);
  report.parameters["m"] = args.m;
  report.parameters["mode"] = mode_json(mode);
  report.parameters["method"] = args.method;
  if (args.topology) report.parameters["topology"] = *args.topology;
  report.parameters["sigma"] = args.sigma;
  report.parameters["budget"] = args.budget;
  report.graph = graph_summary(g, args.graph_file);

  json sets = json::array();
  for (const auto& s : result.optimal_sets) sets.push_back(ids_json(s, base));
  report.payload["method"] = std::string(to_string(result.method));
  report.payload["m"] = result.m;
  report.payload["optimal_sets"] = std::move(sets);
  report.payload["rho"] = result.rho;
  report.payload["total_error"] = result.total_error;
  report.payload["evaluated_count"] = result.evaluated_count;
  report.payload["notes"] = result.notes;

  CsvWriter csv;
  csv.row({"rank", "set", "rho", "total_error", "method", "evaluated_count"});
  for (std::size_t i = 0; i < result.optimal_sets.size(); ++i) {
    csv.row({std::to_string(i + 1), join_ids(result.optimal_sets[i], base),
             format_number(result.rho), format_number(result.total_error),
             std::string(to_string(result.method)), std::to_string(result.evaluated_count)});
  }
  report.timing_ms = elapsed_ms(start);
  return emit(report, common, csv.str());
}

CommandOutput cmd_pairs(const PairsArgs& args, const CommonOptions& common) {
  const auto start = Clock::now();
  const Graph g = read_edge_list_file(args.graph_file);
  const GraphKernels kernels = compute_kernels(g);
  const int base = common.index_base;

  PairSweepOptions options;
  options.bins = args.bins;
  options.budget = args.budget;
  if (args.pair_file) options.pairs = read_pair_file(*args.pair_file, base);
  const PairSweep sweep = pairwise_sweep(kernels, options);

  Report report;
  report.command = "pairs";
  report.parameters = common_json(common);
  report.parameters["bins"] = args.bins;
  report.parameters["budget"] = args.budget;
  if (args.pair_file) report.parameters["pair_file"] = *args.pair_file;
  report.graph = graph_summary(g, args.graph_file);

  double best = 0.0;
  for (const auto& row : sweep.rows) best = std::max(best, row.rho);
  json rows = json::array();
  json argmax = json::array();
  for (const auto& row : sweep.rows) {
    rows.push_back({{"s1", row.s1 + base}, {"s2", row.s2 + base}, {"rho", row.rho}});
    if (row.rho >= best * (1.0 - 1e-9)) argmax.push_back({row.s1 + base, row.s2 + base});
  }
  const Histogram& h = sweep.histogram;
  report.payload["count"] = sweep.rows.size();
  report.payload["pairs"] = std::move(rows);
  report.payload["max_rho"] = best;
  report.payload["argmax_pairs"] = std::move(argmax);
  report.payload["histogram"] = {{"lo", h.lo},
                                 {"hi", h.hi},
                                 {"degenerate", h.degenerate},
                                 {"edges", h.edges},
                                 {"counts", h.counts}};

  CsvWriter csv;
  if (args.histogram_only) {
    csv.row({"bin", "lo", "hi", "count"});
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      csv.row({std::to_string(b), format_number(h.edges[b]), format_number(h.edges[b + 1]),
               std::to_string(h.counts[b])});
    }
  } else {
    csv.row({"s1", "s2", "rho"});
    for (const auto& row : sweep.rows) {
      csv.row({std::to_string(row.s1 + base), std::to_string(row.s2 + base),
               format_number(row.rho)});
    }
  }
  report.timing_ms = elapsed_ms(start);
  return emit(report, common, csv.str());
}

CommandOutput cmd_verify(const VerifyArgs& args, const CommonOptions& common) {
  const auto start = Clock::now();
  if (args.graph_file.has_value() == args.suite.has_value()) {
    throw Error(Errc::invalid_argument, "verify takes either a graph file or --suite");
  }
  if (!(args.tolerance > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  std::vector<NamedGraph> graphs;
  if (args.graph_file) {
    graphs.push_back({*args.graph_file, read_edge_list_file(*args.graph_file)});
  } else {
    graphs = builtin_suite(*args.suite, args.seed);
  }

  IdentitySummary summary;
  for (const auto& g : graphs) check_identities(g, args.max_m, args.gains, args.tolerance, summary);
  const double max_dev = std::max(summary.max_deviation_noise_free, summary.max_deviation_gain);

  Report report;
  report.command = "verify";
  report.parameters = common_json(common);
  if (args.suite) {
    report.parameters["suite"] = *args.suite;
    report.parameters["seed"] = args.seed;
  }
  report.parameters["max_m"] = args.max_m;
  report.parameters["tolerance"] = args.tolerance;
  report.parameters["gains"] = args.gains;
  if (args.graph_file) {
    report.graph = graph_summary(graphs.front().graph, *args.graph_file);
  } else {
    report.graph = {{"suite", *args.suite}, {"count", graphs.size()}};
  }

  const int base = common.index_base;
  json violations = json::array();
  for (const auto& v : summary.violations) {
    violations.push_back({{"graph", v.graph},
                          {"set", ids_json(v.set, base)},
                          {"mode", v.mode},
                          {"deviation", v.deviation}});
  }
  report.payload["graphs"] = summary.graphs;
  report.payload["sets_checked"] = summary.sets_checked;
  report.payload["gain_checked"] = summary.gain_checked;
  report.payload["max_relative_deviation_noise_free"] = summary.max_deviation_noise_free;
  report.payload["max_relative_deviation_gain"] = summary.max_deviation_gain;
  report.payload["max_relative_deviation"] = max_dev;
  report.payload["violation_count"] = summary.violation_count;
  report.payload["violations"] = std::move(violations);

  CsvWriter csv;
  csv.row({"graphs", "sets_checked", "gain_checked", "max_relative_deviation_noise_free",
           "max_relative_deviation_gain", "violation_count"});
  csv.row({std::to_string(summary.graphs), std::to_string(summary.sets_checked),
           std::to_string(summary.gain_checked), format_number(summary.max_deviation_noise_free),
           format_number(summary.max_deviation_gain), std::to_string(summary.violation_count)});
  report.timing_ms = elapsed_ms(start);

  CommandOutput out = emit(report, common, csv.str());
  if (summary.violation_count > 0) {
    out.exit_code = 4;
    std::ostringstream diag;
    for (const auto& v : summary.violations) {
      diag << "identity violation: graph " << v.graph << " set {" << join_ids(v.set, base, ',')
           << "} " << v.mode << " deviation " << format_number(v.deviation) << "\n";
    }
    out.diagnostics = diag.str();
  }
  return out;
}

CommandOutput cmd_simulate(const SimulateArgs& args, const CommonOptions& common) {
  const auto start = Clock::now();
  const Graph g = read_edge_list_file(args.graph_file);
  const LeaderMode mode = parse_mode(args.mode, args.k);
  const LeaderSet leaders(parse_id_list(args.leaders, common.index_base), mode);
  leaders.check_against(g.node_count(), g.node_count());

  SimConfig config;
  config.dt = args.dt;
  config.steps = args.steps;
  config.burn_in = args.burn_in;
  config.sigma = args.sigma;
  config.seed = args.seed;
  config.mu = args.mu;
  const SimResult sim = args.replicas > 1
                            ? simulate_replicas(g, leaders, config, args.replicas, common.threads)
                            : simulate(g, leaders, config);
  const ErrorReport analytic = oracle_error(g, leaders, args.sigma);

  const int base = common.index_base;
  Report report;
  report.command = "simulate";
  report.parameters = common_json(common);
  report.parameters["leaders"] = ids_json(leaders.members(), base);
  report.parameters["mode"] = mode_json(mode);
  report.parameters["sigma"] = args.sigma;
  report.parameters["dt"] = args.dt;
  report.parameters["steps"] = args.steps;
  report.parameters["burn_in"] = config.burn_in.value_or(args.steps / 10);
  report.parameters["seed"] = args.seed;
  report.parameters["mu"] = args.mu;
  report.parameters["replicas"] = args.replicas;
  report.graph = graph_summary(g, args.graph_file);

  json nodes = json::array();
  for (int i = 0; i < g.node_count(); ++i) {
    nodes.push_back({{"node", i + base},
                     {"empirical_variance", sim.empirical_variance(i)},
                     {"std_error", sim.variance_std_error(i)},
                     {"analytic_variance", analytic.per_node_variance(i)}});
  }
  const double gap = sim.analytic_total_error > 0.0
                         ? std::abs(sim.empirical_total_error - sim.analytic_total_error) /
                               sim.analytic_total_error
                         : std::abs(sim.empirical_total_error);
  report.payload["empirical_total_error"] = sim.empirical_total_error;
  report.payload["analytic_total_error"] = sim.analytic_total_error;
  report.payload["relative_gap"] = gap;
  report.payload["total_error_std_error"] = sim.total_error_std_error;
  report.payload["sample_count"] = sim.sample_count;
  report.payload["seed_used"] = sim.seed_used;
  report.payload["nodes"] = std::move(nodes);

  CsvWriter csv;
  csv.row({"node", "empirical_variance", "std_error", "analytic_variance"});
  for (int i = 0; i < g.node_count(); ++i) {
    csv.row({std::to_string(i + base), format_number(sim.empirical_variance(i)),
             format_number(sim.variance_std_error(i)),
             format_number(analytic.per_node_variance(i))});
  }
  report.timing_ms = elapsed_ms(start);
  return emit(report, common, csv.str());
}

CommandOutput cmd_generate(const GenerateArgs& args) {
  Graph g = [&] {
    if (args.kind == "cycle") return cycle_graph(args.n);
    if (args.kind == "path") return path_graph(args.n);
    if (args.kind == "complete") return complete_graph(args.n);
    if (args.kind == "erdos-renyi") return erdos_renyi(args.n, args.p, args.seed);
    throw Error(Errc::invalid_argument,
                "unknown graph kind '" + args.kind + "' (cycle|path|complete|erdos-renyi)");
  }();
  const std::string text = serialize_edge_list(g);
  CommandOutput out;
  if (args.output) {
    std::ofstream file(*args.output, std::ios::binary);
    if (!file || !(file << text)) {
      throw Error(Errc::invalid_argument, "cannot write '" + *args.output + "'");
    }
  } else {
    out.text = text;
  }
  return out;
}

}  // namespace leadsel::cli
