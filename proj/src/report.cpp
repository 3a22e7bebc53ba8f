#include "ilouvain/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "ilouvain/errors.hpp"

namespace ilouvain {

namespace {

double median_sorted(std::span<const double> v) {
  size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

}  // namespace

Quartiles quartiles(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("quartiles of an empty sample");
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  std::span<const double> all(values);
  // The middle element belongs to both halves when n is odd.
  size_t lower_len = n % 2 ? n / 2 + 1 : n / 2;
  Quartiles q;
  q.median = median_sorted(all);
  q.q1 = median_sorted(all.subspan(0, lower_len));
  q.q3 = median_sorted(all.subspan(n - lower_len, lower_len));
  return q;
}

BoxSummary box_summary(std::vector<double> values) {
  BoxSummary b;
  b.q = quartiles(values);
  double iqr = b.q.q3 - b.q.q1;
  b.whisker_low = b.q.q1 - 1.5 * iqr;
  b.whisker_high = b.q.q3 + 1.5 * iqr;
  for (double v : values)
    if (v < b.whisker_low || v > b.whisker_high) ++b.outliers;
  return b;
}

std::vector<HistogramBin> fixed_width_histogram(std::span<const double> values,
                                                int bins) {
  if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
  std::vector<HistogramBin> out;
  if (values.empty()) return out;
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {
    out.push_back({lo, hi, static_cast<int>(values.size())});
    return out;
  }
  double width = (hi - lo) / bins;
  out.resize(bins);
  for (int b = 0; b < bins; ++b) {
    out[b].lo = lo + b * width;
    out[b].hi = b + 1 == bins ? hi : lo + (b + 1) * width;
  }
  for (double v : values) {
    int b = std::min<int>(bins - 1, static_cast<int>((v - lo) / width));
    ++out[b].count;
  }
  return out;
}

nlohmann::json hyperparams_to_json(const Hyperparams& hp) {
  nlohmann::json j{
      {"max_nodes", hp.max_nodes},
      {"max_clusters", hp.max_clusters},
      {"max_node_visits", hp.max_node_visits},
      {"random_seed", hp.random_seed},
      {"solver_timeout_ms", hp.solver_timeout.count()},
      {"bfs_depth", hp.bfs_depth},
      {"counter_max_out", hp.counter_max_out},
      {"counter_max_in", hp.counter_max_in},
      {"theta", hp.theta},
      {"node_strategy", to_string(hp.node_strategy)},
      {"cluster_strategy", to_string(hp.cluster_strategy)},
  };
  if (hp.gamma)
    j["gamma"] = *hp.gamma;
  else
    j["gamma"] = nullptr;
  return j;
}

Hyperparams hyperparams_from_json(const nlohmann::json& j) {
  Hyperparams hp;
  hp.max_nodes = j.value("max_nodes", hp.max_nodes);
  hp.max_clusters = j.value("max_clusters", hp.max_clusters);
  hp.max_node_visits = j.value("max_node_visits", hp.max_node_visits);
  hp.random_seed = j.value("random_seed", hp.random_seed);
  hp.solver_timeout =
      std::chrono::milliseconds(j.value("solver_timeout_ms", hp.solver_timeout.count()));
  hp.bfs_depth = j.value("bfs_depth", hp.bfs_depth);
  if (j.contains("gamma") && !j["gamma"].is_null())
    hp.gamma = j["gamma"].get<double>();
  hp.counter_max_out = j.value("counter_max_out", hp.counter_max_out);
  hp.counter_max_in = j.value("counter_max_in", hp.counter_max_in);
  hp.theta = j.value("theta", hp.theta);
  if (j.contains("node_strategy"))
    hp.node_strategy = node_strategy_from_string(j["node_strategy"].get<std::string>());
  if (j.contains("cluster_strategy"))
    hp.cluster_strategy =
        cluster_strategy_from_string(j["cluster_strategy"].get<std::string>());
  return hp;
}

nlohmann::json run_stats_to_json(const RunStats& s) {
  nlohmann::json trace = nlohmann::json::array();
  for (const TraceEntry& t : s.modularity_trace)
    trace.push_back({t.level, t.pass, t.q});
  return {
      {"solver_calls", s.solver_calls},
      {"qubo_sizes", s.qubo_sizes},
      {"greedy_shortcuts", s.greedy_shortcuts},
      {"single_candidate_eliminations", s.single_candidate_eliminations},
      {"infeasible_decodes", s.infeasible_decodes},
      {"modularity_trace", std::move(trace)},
      {"wall_ms", s.wall_ms},
  };
}

RunStats run_stats_from_json(const nlohmann::json& j) {
  RunStats s;
  s.solver_calls = j.value("solver_calls", 0L);
  s.qubo_sizes = j.value("qubo_sizes", std::vector<int>{});
  s.greedy_shortcuts = j.value("greedy_shortcuts", 0L);
  s.single_candidate_eliminations = j.value("single_candidate_eliminations", 0L);
  s.infeasible_decodes = j.value("infeasible_decodes", 0L);
  if (j.contains("modularity_trace"))
    for (const auto& t : j["modularity_trace"])
      s.modularity_trace.push_back(
          {t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<double>()});
  s.wall_ms = j.value("wall_ms", std::int64_t{0});
  return s;
}

nlohmann::json run_report_to_json(const RunReport& r) {
  nlohmann::json j{
      {"schema", 1},
      {"graph_name", r.graph_name},
      {"n", r.num_nodes},
      {"m", r.num_edges},
      {"algorithm", r.algorithm},
      {"hyperparams", hyperparams_to_json(r.hyperparams)},
      {"final_modularity", r.final_modularity},
      {"num_clusters", r.num_clusters},
      {"stats", run_stats_to_json(r.stats)},
  };
  if (r.stats.qubo_sizes.empty()) {
    j["qubo_size_quartiles"] = nullptr;
  } else {
    std::vector<double> sizes(r.stats.qubo_sizes.begin(), r.stats.qubo_sizes.end());
    Quartiles q = quartiles(std::move(sizes));
    j["qubo_size_quartiles"] = {q.q1, q.median, q.q3};
  }
  return j;
}

RunReport run_report_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema", 0) != 1) throw ParseError("unsupported report schema");
    RunReport r;
    r.graph_name = j.at("graph_name").get<std::string>();
    r.num_nodes = j.at("n").get<int>();
    r.num_edges = j.at("m").get<int>();
    r.algorithm = j.at("algorithm").get<std::string>();
    if (j.contains("hyperparams")) r.hyperparams = hyperparams_from_json(j["hyperparams"]);
    r.final_modularity = j.at("final_modularity").get<double>();
    r.num_clusters = j.at("num_clusters").get<int>();
    if (j.contains("stats")) r.stats = run_stats_from_json(j["stats"]);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("bad report: ") + e.what());
  }
}

void write_partition(std::ostream& os, const Graph& g,
                     std::span<const ClusterId> assignment) {
  if (static_cast<int>(assignment.size()) != g.num_nodes())
    throw std::invalid_argument("assignment length does not match the graph");
  for (NodeId i = 0; i < g.num_nodes(); ++i)
    os << g.label(i) << ' ' << assignment[i] << '\n';
}

std::vector<ClusterId> read_partition(std::istream& is, const Graph& g) {
  std::unordered_map<std::string, NodeId> by_label;
  for (NodeId i = 0; i < g.num_nodes(); ++i) by_label.emplace(g.label(i), i);

  std::vector<ClusterId> assignment(g.num_nodes(), -1);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string label;
    if (!(ls >> label)) continue;  // blank line
    ClusterId c;
    std::string extra;
    if (!(ls >> c) || c < 0) throw ParseError("bad cluster id", lineno);
    if (ls >> extra) throw ParseError("too many fields", lineno);
    auto it = by_label.find(label);
    if (it == by_label.end()) throw ParseError("unknown node '" + label + "'", lineno);
    if (assignment[it->second] != -1)
      throw ParseError("node '" + label + "' assigned twice", lineno);
    assignment[it->second] = c;
  }
  for (NodeId i = 0; i < g.num_nodes(); ++i)
    if (assignment[i] == -1)
      throw ParseError("node '" + g.label(i) + "' has no assignment");
  return assignment;
}

std::string csv_header() {
  return "graph,algorithm,seed,modularity,clusters,solver_calls,avg_qubo_size,wall_ms";
}

std::string csv_row(const std::string& graph, const std::string& algorithm,
                    std::uint64_t seed, double modularity, int clusters,
                    long solver_calls, double avg_qubo_size, std::int64_t wall_ms) {
  std::ostringstream os;
  os << graph << ',' << algorithm << ',' << seed << ',' << std::setprecision(10)
     << modularity << ',' << clusters << ',' << solver_calls << ','
     << std::setprecision(6) << avg_qubo_size << ',' << wall_ms;
  return os.str();
}

}  // namespace ilouvain
