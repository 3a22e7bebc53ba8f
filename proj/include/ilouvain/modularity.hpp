#pragma once

#include <span>
#include <vector>

#include "ilouvain/partition.hpp"

namespace ilouvain {

struct Move {
  NodeId node;
  ClusterId target;
};

/// Joint reassignment of distinct nodes. Targets must exist in the partition
/// or be kNewCluster.
using MoveSet = std::vector<Move>;

/// Newman modularity Q via the per-cluster closed form
///   Q = sum_c [ w_in(c)/m - (Sigma_tot(c)/2m)^2 ],  Q in [-1, 1].
double modularity(const Graph& g, const Partition& p);

/// Q recomputed from a bare assignment, with no incremental bookkeeping.
double modularity_of_assignment(const Graph& g, std::span<const ClusterId> assignment);

/// modularity(apply(p, moves)) - modularity(p), computed incrementally in
/// O(sum deg(moved nodes)) without touching `p`.
double mod_gain(const Graph& g, const Partition& p, const MoveSet& moves);

/// Applies the moves in order; drops emptied clusters. Throws
/// std::invalid_argument on duplicate nodes or unknown targets.
void apply_moves(Partition& p, const MoveSet& moves);

/// Gain of moving the single node `i` to `target` (0 when target is its
/// current cluster).
double single_move_gain(const Graph& g, const Partition& p, NodeId i, ClusterId target);

struct ClusterGain {
  ClusterId cluster;
  double gain;
};

/// Single-move gains for node i over its current cluster (gain 0) and every
/// neighboring cluster, one O(deg) scan. Order unspecified.
std::vector<ClusterGain> neighbor_cluster_gains(const Graph& g, const Partition& p, NodeId i);

struct BruteForceResult {
  std::vector<ClusterId> assignment;
  double q;
};

/// Exhaustive maximizer of Q over all set partitions (Bell-number
/// enumeration). Refuses graphs with more than 12 nodes.
BruteForceResult brute_force_best(const Graph& g);

}  // namespace ilouvain
