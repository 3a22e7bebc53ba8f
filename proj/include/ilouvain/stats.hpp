#pragma once

#include <cstdint>
#include <vector>

#include "ilouvain/partition.hpp"

namespace ilouvain {

/// Modularity checkpoint: level is the coarsening depth (0 = input graph),
/// pass 0 is the level's starting value, pass p >= 1 the value after pass p.
struct TraceEntry {
  int level = 0;
  int pass = 0;
  double q = 0.0;
};

/// Bookkeeping shared by both algorithms; the baseline leaves the solver
/// counters at zero. Invariant: qubo_sizes has exactly solver_calls entries.
struct RunStats {
  long solver_calls = 0;
  std::vector<int> qubo_sizes;
  long greedy_shortcuts = 0;
  long single_candidate_eliminations = 0;
  long infeasible_decodes = 0;
  std::vector<TraceEntry> modularity_trace;
  std::int64_t wall_ms = 0;
};

/// Final clustering flattened onto the input graph's nodes, cluster ids
/// compacted to 0..num_clusters-1 in order of first appearance.
struct ClusterResult {
  std::vector<ClusterId> assignment;
  double modularity = 0.0;
  int num_clusters = 0;
  RunStats stats;
};

/// Relabels an assignment to consecutive ids ordered by first appearance.
std::vector<ClusterId> compact_assignment(const std::vector<ClusterId>& assignment);

}  // namespace ilouvain
