#pragma once

#include <vector>

#include "ilouvain/graph.hpp"

namespace ilouvain {

using ClusterId = int;

struct Move;

/// Sentinel target meaning "a fresh singleton cluster".
inline constexpr ClusterId kNewCluster = -1;

/// Node -> cluster assignment over a fixed Graph, maintaining per-cluster
/// degree sums (Sigma_tot) and intra-cluster weight (w_in) incrementally.
///
/// Cluster ids are stable within a level; empty clusters are dropped eagerly
/// (their ids become reusable for kNewCluster moves). Single-owner mutable:
/// no concurrent mutation.
class Partition {
 public:
  /// Every node in its own cluster, cluster id == node id.
  static Partition singletons(const Graph& g);

  /// Adopts an arbitrary assignment (cluster ids must be in [0, n)).
  Partition(const Graph& g, std::vector<ClusterId> assignment);

  const Graph& graph() const { return *g_; }
  int num_nodes() const { return static_cast<int>(assignment_.size()); }
  int num_clusters() const { return num_clusters_; }

  ClusterId cluster_of(NodeId i) const { return assignment_[i]; }
  const std::vector<ClusterId>& assignment() const { return assignment_; }

  bool cluster_exists(ClusterId c) const {
    return c >= 0 && c < static_cast<int>(size_.size()) && size_[c] > 0;
  }

  /// One past the largest allocated cluster id (allocated != nonempty).
  ClusterId id_bound() const { return static_cast<ClusterId>(size_.size()); }
  int cluster_size(ClusterId c) const { return size_[c]; }

  /// Sigma_tot(c): sum of weighted degrees k_i over members.
  double cluster_degree(ClusterId c) const { return sigma_tot_[c]; }

  /// w_in(c): intra-cluster edge weight counted once plus member self-loops.
  double intra_weight(ClusterId c) const { return w_in_[c]; }

  /// Nonempty cluster ids, ascending.
  std::vector<ClusterId> cluster_ids() const;

  /// Members of one cluster (O(n) scan).
  std::vector<NodeId> members(ClusterId c) const;

  /// All nonempty clusters' member lists keyed by cluster id (O(n)).
  std::vector<std::vector<NodeId>> members_by_cluster() const;

  /// Moves one node; target must be an existing cluster or kNewCluster.
  /// Updates Sigma_tot and w_in in O(deg(i)).
  void move_node(NodeId i, ClusterId target);

 private:
  /// Needs raw access: a joint MoveSet may empty a cluster transiently and
  /// refill it, so ids are only recycled once the whole set is applied.
  friend void apply_moves(Partition& p, const std::vector<Move>& moves);

  const Graph* g_;
  std::vector<ClusterId> assignment_;
  std::vector<double> sigma_tot_;
  std::vector<double> w_in_;
  std::vector<int> size_;
  std::vector<ClusterId> free_ids_;  // emptied cluster ids, reusable
  int num_clusters_ = 0;

  double links_to_cluster(NodeId i, ClusterId c) const;
};

}  // namespace ilouvain
