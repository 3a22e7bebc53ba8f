#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ilouvain/dataset.hpp"
#include "ilouvain/errors.hpp"
#include "ilouvain/graph.hpp"
#include "ilouvain/ising.hpp"
#include "ilouvain/louvain.hpp"
#include "ilouvain/report.hpp"
#include "ilouvain/solvers.hpp"

namespace {

using namespace ilouvain;

constexpr int kExitOk = 0;
constexpr int kExitParse = 1;    // unreadable or malformed input
constexpr int kExitInvalid = 2;  // hyperparameters or option values out of range
constexpr int kExitRemote = 3;   // remote solver unreachable or misbehaving

struct CommonOpts {
  std::string graph;
  std::string data_dir;
  bool weighted = false;
  std::string out_dir = ".";
  std::string algorithm = "ising";
  std::string solver = "sa";
  std::string endpoint;
  std::string gamma = "auto";
  std::string node_strategy = "bfs";
  std::string cluster_strategy = "semi_greedy";
  int sa_sweeps_per_var = 100;
  std::int64_t solver_timeout_ms = 10'000;
  Hyperparams hp;
};

std::string default_data_dir() {
  const char* env = std::getenv("ILOUVAIN_DATA");
  return env && *env ? env : "data";
}

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--graph", o.graph, "builtin name, bundled dataset, or edge list path")
      ->required();
  cmd->add_option("--data-dir", o.data_dir, "directory holding the bundled datasets")
      ->default_val(default_data_dir());
  cmd->add_flag("--weighted", o.weighted,
                "read a third column as edge weight (path graphs only)");
  cmd->add_option("--out", o.out_dir, "output directory")->default_val(".");
  cmd->add_option("--solver", o.solver, "exhaustive|sa|greedy|remote")->default_val("sa");
  cmd->add_option("--endpoint", o.endpoint, "remote solver URL");
  cmd->add_option("--max-nodes", o.hp.max_nodes, "free nodes per subproblem");
  cmd->add_option("--max-clusters", o.hp.max_clusters, "candidate clusters per node");
  cmd->add_option("--max-node-visits", o.hp.max_node_visits,
                  "subproblem memberships per node per pass");
  cmd->add_option("--seed", o.hp.random_seed, "random seed");
  cmd->add_option("--solver-timeout-ms", o.solver_timeout_ms, "per-call solver budget");
  cmd->add_option("--bfs-depth", o.hp.bfs_depth, "neighborhood radius");
  cmd->add_option("--gamma", o.gamma, "one-hot penalty weight, or 'auto'")
      ->default_val("auto");
  cmd->add_option("--counter-max-out", o.hp.counter_max_out, "level limit");
  cmd->add_option("--counter-max-in", o.hp.counter_max_in, "passes per level limit");
  cmd->add_option("--theta", o.hp.theta, "minimum gain to keep iterating");
  cmd->add_option("--node-strategy", o.node_strategy, "bfs|random|sliding_window");
  cmd->add_option("--cluster-strategy", o.cluster_strategy, "semi_greedy|bfs");
  cmd->add_option("--sa-sweeps", o.sa_sweeps_per_var, "annealer sweeps per variable");
}

/// Applies the string-typed options onto the hyperparams and validates.
/// Throws std::invalid_argument on bad values.
void finalize_options(CommonOpts& o) {
  if (o.gamma == "auto") {
    o.hp.gamma.reset();
  } else {
    size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(o.gamma, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("--gamma expects 'auto' or a number");
    }
    if (used != o.gamma.size()) throw std::invalid_argument("--gamma expects 'auto' or a number");
    o.hp.gamma = v;
  }
  o.hp.node_strategy = node_strategy_from_string(o.node_strategy);
  o.hp.cluster_strategy = cluster_strategy_from_string(o.cluster_strategy);
  if (o.algorithm != "louvain" && o.algorithm != "ising")
    throw std::invalid_argument("--algorithm must be louvain or ising");
  if (o.sa_sweeps_per_var < 1) throw std::invalid_argument("--sa-sweeps must be >= 1");
  o.hp.solver_timeout = std::chrono::milliseconds(o.solver_timeout_ms);
  o.hp.validate();
  solver_target_from_string(o.solver);
}

SolverConfig solver_config(const CommonOpts& o) {
  SolverConfig cfg;
  cfg.target = solver_target_from_string(o.solver);
  cfg.endpoint = o.endpoint;
  cfg.sa.sweeps_per_var = o.sa_sweeps_per_var;
  return cfg;
}

ClusterResult run_algorithm(const Graph& g, const std::string& algorithm,
                            const Hyperparams& hp, const SolverConfig& scfg) {
  if (algorithm == "louvain") return louvain(g, {hp.theta, hp.random_seed});
  SolverDispatch dispatch(scfg);
  return ising_louvain(g, hp, dispatch);
}

std::string file_stem(const CommonOpts& o, std::uint64_t seed) {
  std::string g = std::filesystem::path(o.graph).stem().string();
  std::replace(g.begin(), g.end(), ' ', '_');
  return g + "_" + o.algorithm + "_s" + std::to_string(seed);
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v), acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

double avg_qubo_size(const RunStats& s) {
  if (s.qubo_sizes.empty()) return 0.0;
  double acc = 0.0;
  for (int x : s.qubo_sizes) acc += x;
  return acc / static_cast<double>(s.qubo_sizes.size());
}

int cmd_cluster(CommonOpts& o) {
  Graph g = resolve_graph(o.graph, o.data_dir, o.weighted);
  ClusterResult res = run_algorithm(g, o.algorithm, o.hp, solver_config(o));

  RunReport report;
  report.graph_name = o.graph;
  report.num_nodes = g.num_nodes();
  report.num_edges = g.num_edges();
  report.algorithm = o.algorithm;
  report.hyperparams = o.hp;
  report.final_modularity = res.modularity;
  report.num_clusters = res.num_clusters;
  report.stats = res.stats;

  std::filesystem::create_directories(o.out_dir);
  std::string stem = file_stem(o, o.hp.random_seed);
  std::filesystem::path part_path = std::filesystem::path(o.out_dir) / (stem + ".partition");
  std::filesystem::path report_path = std::filesystem::path(o.out_dir) / (stem + ".report.json");

  std::ofstream pf(part_path);
  if (!pf) throw ParseError("cannot write " + part_path.string());
  write_partition(pf, g, res.assignment);
  std::ofstream rf(report_path);
  if (!rf) throw ParseError("cannot write " + report_path.string());
  rf << run_report_to_json(report).dump(2) << '\n';

  std::cout << "graph " << o.graph << ": Q = " << std::setprecision(6) << std::fixed
            << res.modularity << ", " << res.num_clusters << " clusters, "
            << res.stats.solver_calls << " solver calls, " << res.stats.wall_ms
            << " ms\n"
            << "wrote " << part_path.string() << "\n"
            << "wrote " << report_path.string() << "\n";
  return kExitOk;
}

struct CompareRun {
  std::string algorithm;
  std::uint64_t seed = 0;
  ClusterResult result;
};

int cmd_compare(CommonOpts& o, int runs) {
  if (runs < 1) throw std::invalid_argument("--runs must be >= 1");
  Graph g = resolve_graph(o.graph, o.data_dir, o.weighted);
  SolverConfig scfg = solver_config(o);

  std::vector<CompareRun> jobs;
  for (const char* algo : {"louvain", "ising"})
    for (int r = 0; r < runs; ++r)
      jobs.push_back({algo, o.hp.random_seed + static_cast<std::uint64_t>(r), {}});

  // Seeds are independent; run them in waves sized to the machine.
  unsigned width = std::max(1u, std::thread::hardware_concurrency());
  for (size_t base = 0; base < jobs.size(); base += width) {
    size_t end = std::min(jobs.size(), base + width);
    std::vector<std::future<ClusterResult>> wave;
    for (size_t i = base; i < end; ++i)
      wave.push_back(std::async(std::launch::async, [&, i] {
        Hyperparams hp = o.hp;
        hp.random_seed = jobs[i].seed;
        return run_algorithm(g, jobs[i].algorithm, hp, scfg);
      }));
    for (size_t i = base; i < end; ++i) jobs[i].result = wave[i - base].get();
  }

  std::cout << "graph " << o.graph << " (n=" << g.num_nodes() << ", m=" << g.num_edges()
            << "), " << runs << " runs per algorithm\n\n";
  std::cout << std::left << std::setw(12) << "algorithm" << std::right << std::setw(10)
            << "best" << std::setw(10) << "mean" << std::setw(10) << "stddev" << '\n';
  for (const char* algo : {"louvain", "ising"}) {
    std::vector<double> qs;
    for (const CompareRun& j : jobs)
      if (j.algorithm == algo) qs.push_back(j.result.modularity);
    std::cout << std::left << std::setw(12) << algo << std::right << std::fixed
              << std::setprecision(4) << std::setw(10) << *std::max_element(qs.begin(), qs.end())
              << std::setw(10) << mean(qs) << std::setw(10) << sample_stddev(qs) << '\n';
  }

  std::filesystem::path ref_path = std::filesystem::path(o.data_dir) / "reference_results.json";
  std::ifstream ref_file(ref_path);
  if (ref_file) {
    nlohmann::json ref = nlohmann::json::parse(ref_file, nullptr, false);
    if (!ref.is_discarded() && ref.contains("graphs") && ref["graphs"].contains(o.graph)) {
      const auto& row = ref["graphs"][o.graph];
      std::cout << "\npublished reference values (leiden shown for context only):\n"
                << std::left << std::setw(12) << "leiden" << std::right << std::setw(10)
                << std::fixed << std::setprecision(4) << row["leiden"].get<double>() << '\n'
                << std::left << std::setw(12) << "louvain" << std::right << std::setw(10)
                << row["louvain"].get<double>() << '\n'
                << std::left << std::setw(12) << "ising" << std::right << std::setw(10)
                << row["ising_louvain"].get<double>() << '\n';
    }
  }

  std::filesystem::create_directories(o.out_dir);
  std::string stem = std::filesystem::path(o.graph).stem().string();
  std::filesystem::path csv_path = std::filesystem::path(o.out_dir) / (stem + "_compare.csv");
  std::ofstream csv(csv_path);
  if (!csv) throw ParseError("cannot write " + csv_path.string());
  csv << csv_header() << '\n';
  for (const CompareRun& j : jobs)
    csv << csv_row(o.graph, j.algorithm, j.seed, j.result.modularity,
                   j.result.num_clusters, j.result.stats.solver_calls,
                   avg_qubo_size(j.result.stats), j.result.stats.wall_ms)
        << '\n';
  std::cout << "\nwrote " << csv_path.string() << '\n';
  return kExitOk;
}

int cmd_qubo_stats(const std::string& report_path, int bins) {
  std::ifstream f(report_path);
  if (!f) throw ParseError("cannot open " + report_path);
  nlohmann::json j = nlohmann::json::parse(f, nullptr, false);
  if (j.is_discarded()) throw ParseError("not valid JSON: " + report_path);
  RunReport r = run_report_from_json(j);

  if (r.stats.qubo_sizes.empty()) {
    std::cout << "no QUBO calls recorded in " << report_path << '\n';
    return kExitOk;
  }
  std::vector<double> sizes(r.stats.qubo_sizes.begin(), r.stats.qubo_sizes.end());
  BoxSummary box = box_summary(sizes);
  std::cout << r.stats.qubo_sizes.size() << " QUBO calls on " << r.graph_name << " ("
            << r.algorithm << ")\n"
            << std::fixed << std::setprecision(1) << "Q1 " << box.q.q1 << "  median "
            << box.q.median << "  Q3 " << box.q.q3 << '\n'
            << "whiskers [" << box.whisker_low << ", " << box.whisker_high << "], "
            << box.outliers << " outlier(s)\n";
  std::cout << "size histogram:\n";
  for (const HistogramBin& b : fixed_width_histogram(sizes, bins)) {
    std::cout << std::setw(8) << b.lo << " .. " << std::setw(8) << b.hi << "  "
              << std::setw(6) << b.count << ' ';
    for (int k = 0; k < b.count && k < 60; ++k) std::cout << '#';
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modularity clustering with annealer-solved local subproblems"};
  app.require_subcommand(1);

  CommonOpts cluster_opts, compare_opts;
  int runs = 20;
  std::string report_path;
  int bins = 10;

  CLI::App* cluster = app.add_subcommand("cluster", "partition one graph and write a report");
  add_common_flags(cluster, cluster_opts);
  cluster->add_option("--algorithm", cluster_opts.algorithm, "louvain|ising")
      ->default_val("ising");

  CLI::App* compare = app.add_subcommand("compare", "run both algorithms over many seeds");
  add_common_flags(compare, compare_opts);
  compare->add_option("--runs", runs, "seeds per algorithm")->default_val(20);

  CLI::App* stats = app.add_subcommand("qubo-stats", "summarize QUBO sizes from a report");
  stats->add_option("report", report_path, "RunReport JSON path")->required();
  stats->add_option("--bins", bins, "histogram bins")->default_val(10);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (cluster->parsed()) {
      finalize_options(cluster_opts);
      return cmd_cluster(cluster_opts);
    }
    if (compare->parsed()) {
      compare_opts.algorithm = "ising";  // compare always runs both
      finalize_options(compare_opts);
      return cmd_compare(compare_opts, runs);
    }
    if (bins < 1) throw std::invalid_argument("--bins must be >= 1");
    return cmd_qubo_stats(report_path, bins);
  } catch (const RemoteUnavailable& e) {
    std::cerr << "error: remote solver unavailable: " << e.what() << '\n';
    return kExitRemote;
  } catch (const ProtocolViolation& e) {
    std::cerr << "error: remote solver protocol violation: " << e.what() << '\n';
    return kExitRemote;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  }
}
