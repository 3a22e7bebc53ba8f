#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ilouvain {

using NodeId = int;

/// Immutable weighted undirected multigraph with self-loops.
///
/// Parallel edges are merged at construction by summing weights. Self-loops
/// are stored separately from the adjacency; a self-loop of weight w
/// contributes 2w to the weighted degree k_i (and 2w to A_ii), the unique
/// convention under which coarsening preserves modularity exactly.
class Graph {
 public:
  struct Neighbor {
    NodeId node;
    double weight;
  };

  int num_nodes() const { return static_cast<int>(offsets_.size()) - 1; }

  /// Total edge weight m = 1/2 sum_i k_i (each off-diagonal edge counted
  /// once, each self-loop counted once at its stored weight).
  double total_weight() const { return total_weight_; }

  /// Distinct edges after merging: off-diagonal pairs plus self-loops.
  int num_edges() const { return num_edges_; }

  /// Weighted degree k_i = sum_j w(i,j) + 2 * self_loop(i).
  double degree(NodeId i) const { return degree_[i]; }
  double self_loop(NodeId i) const { return self_loop_[i]; }
  double max_degree() const { return max_degree_; }

  std::span<const Neighbor> neighbors(NodeId i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }

  /// External label the node had in the input file ("0","1",... for builtins).
  const std::string& label(NodeId i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  friend class GraphBuilder;
  Graph() = default;

  std::vector<int> offsets_{0};
  std::vector<Neighbor> adj_;
  std::vector<double> self_loop_;
  std::vector<double> degree_;
  std::vector<std::string> labels_;
  double total_weight_ = 0.0;
  double max_degree_ = 0.0;
  int num_edges_ = 0;
};

/// Accumulates labeled nodes and weighted edges, then builds an immutable
/// Graph with parallel edges merged.
class GraphBuilder {
 public:
  /// Returns the dense id for `label`, registering it on first sight.
  NodeId intern(const std::string& label);

  /// Adds `count` anonymous nodes labeled by their own ids.
  void add_nodes(int count);

  void add_edge(NodeId u, NodeId v, double weight = 1.0);

  int num_nodes() const { return static_cast<int>(labels_.size()); }

  Graph build();

 private:
  struct Edge {
    NodeId u, v;
    double weight;
  };
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
  std::vector<Edge> edges_;
  std::vector<double> self_loop_;
};

/// Loads a SNAP-style edge list: UTF-8 text, '#'-prefixed comment lines,
/// 2 or 3 whitespace-separated tokens per line (u v [w]). External labels
/// may be arbitrary tokens; they are remapped to dense ids in first-seen
/// order and kept for output. Duplicate edges merge by weight summation.
/// When `weighted` is false every edge gets weight 1 and a third token is an
/// error; silently dropping real weights would corrupt the graph.
Graph load_edge_list(const std::filesystem::path& path, bool weighted = false);

enum class Builtin { Karate, TwoTriangles, TrappedPair };

Graph builtin_graph(Builtin name);
Graph builtin_graph(const std::string& name);  // throws on unknown name
bool is_builtin_name(const std::string& name);

/// The starting assignment that goes with Builtin::TrappedPair: a partition
/// from which no single-node move improves modularity but a two-node move
/// does (certified by exhaustive move enumeration in the tests).
std::vector<int> trapped_pair_start_assignment();

class Partition;

struct Aggregated {
  Graph graph;                    // one supernode per nonempty cluster
  std::vector<NodeId> node_map;   // old node -> supernode
};

/// Collapses each cluster of `p` into a supernode. Inter-cluster weight
/// becomes supernode edges; intra-cluster weight (plus member self-loops)
/// becomes supernode self-loops. Total weight m is preserved exactly.
Aggregated aggregate(const Graph& g, const Partition& p);

}  // namespace ilouvain
