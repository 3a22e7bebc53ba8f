#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "ilouvain/graph.hpp"
#include "ilouvain/ising.hpp"
#include "ilouvain/stats.hpp"

namespace ilouvain {

struct Quartiles {
  double q1 = 0.0, median = 0.0, q3 = 0.0;
};

/// Hinge quartiles: the median splits the sorted values into halves (the
/// middle element joins both halves when the count is odd); q1 and q3 are
/// those halves' medians. Requires at least one value.
Quartiles quartiles(std::vector<double> values);

struct BoxSummary {
  Quartiles q;
  double whisker_low = 0.0;   // q1 - 1.5 IQR
  double whisker_high = 0.0;  // q3 + 1.5 IQR
  int outliers = 0;           // values outside the whiskers
};
BoxSummary box_summary(std::vector<double> values);

struct HistogramBin {
  double lo = 0.0, hi = 0.0;
  int count = 0;
};
/// Equal-width bins spanning [min, max]; the last bin is closed on both ends.
std::vector<HistogramBin> fixed_width_histogram(std::span<const double> values,
                                                int bins);

struct RunReport {
  std::string graph_name;
  int num_nodes = 0;
  int num_edges = 0;
  std::string algorithm;  // "louvain" | "ising"
  Hyperparams hyperparams;
  double final_modularity = 0.0;
  int num_clusters = 0;
  RunStats stats;
};

nlohmann::json hyperparams_to_json(const Hyperparams& hp);
Hyperparams hyperparams_from_json(const nlohmann::json& j);
nlohmann::json run_stats_to_json(const RunStats& s);
RunStats run_stats_from_json(const nlohmann::json& j);

/// Document carries "schema": 1 and, when solver calls were recorded, the
/// qubo size quartiles.
nlohmann::json run_report_to_json(const RunReport& r);
RunReport run_report_from_json(const nlohmann::json& j);  // throws ParseError

/// Lines "original_label cluster_id".
void write_partition(std::ostream& os, const Graph& g,
                     std::span<const ClusterId> assignment);
/// Inverse of write_partition against the same graph; throws ParseError on
/// unknown labels, bad ids, or nodes left unassigned.
std::vector<ClusterId> read_partition(std::istream& is, const Graph& g);

std::string csv_header();
std::string csv_row(const std::string& graph, const std::string& algorithm,
                    std::uint64_t seed, double modularity, int clusters,
                    long solver_calls, double avg_qubo_size, std::int64_t wall_ms);

}  // namespace ilouvain
