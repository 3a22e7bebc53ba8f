#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ilouvain/qubo.hpp"
#include "ilouvain/solvers.hpp"
#include "ilouvain/stats.hpp"

namespace ilouvain {

enum class NodeStrategy { Random, SlidingWindow, Bfs };
enum class ClusterStrategy { Bfs, SemiGreedy };

const char* to_string(NodeStrategy s);
const char* to_string(ClusterStrategy s);
NodeStrategy node_strategy_from_string(const std::string& s);        // throws invalid_argument
ClusterStrategy cluster_strategy_from_string(const std::string& s);  // throws invalid_argument

struct Hyperparams {
  int max_nodes = 30;
  int max_clusters = 4;
  int max_node_visits = 2;
  std::uint64_t random_seed = 0;
  std::chrono::milliseconds solver_timeout{10'000};
  int bfs_depth = 2;
  std::optional<double> gamma;  // unset: max weighted degree, refreshed per level
  int counter_max_out = 20;
  int counter_max_in = 20;
  double theta = 1e-7;
  NodeStrategy node_strategy = NodeStrategy::Bfs;
  ClusterStrategy cluster_strategy = ClusterStrategy::SemiGreedy;

  /// Throws std::invalid_argument on nonpositive counts, negative theta,
  /// nonpositive fixed gamma, or nonpositive timeout.
  void validate() const;
};

/// Per-pass eligibility ledger: visits[i] counts memberships of i in solved
/// subproblems; consumed[i] marks i for anchor skipping.
struct VisitLedger {
  std::vector<int> visits;
  std::vector<char> consumed;
  explicit VisitLedger(int n) : visits(n, 0), consumed(n, 0) {}
};

/// Anchor plus nodes within bfs_depth hops in discovery order, truncated to
/// max_nodes; nodes at their visit budget are skipped (the anchor is assumed
/// eligible by the caller).
std::vector<NodeId> select_nodes_bfs(const Graph& g, NodeId anchor, int bfs_depth,
                                     int max_nodes, const VisitLedger& ledger,
                                     int max_visits);
/// Anchor plus a uniform sample of eligible nodes.
std::vector<NodeId> select_nodes_random(const Graph& g, NodeId anchor, int max_nodes,
                                        const VisitLedger& ledger, int max_visits,
                                        std::mt19937_64& rng);
/// Consecutive eligible nodes of the pass's rotated id list, starting at the
/// anchor's position, wrapping around.
std::vector<NodeId> select_nodes_window(std::span<const NodeId> order, int anchor_pos,
                                        int max_nodes, const VisitLedger& ledger,
                                        int max_visits);

struct SelectedClusters {
  LocalProblem problem;  // reduced S with per-node candidates; gamma left to caller
  MoveSet forced;        // single-candidate nodes leave S as explicit no-ops
  int eliminated = 0;
};

/// Builds per-node candidate lists (each containing the node's current
/// cluster, capped at max_clusters) and prunes single-candidate nodes.
/// bfs_depth applies to the Bfs strategy only.
SelectedClusters select_clusters(const Graph& g, const Partition& p,
                                 std::span<const NodeId> s, ClusterStrategy strategy,
                                 int max_clusters, int bfs_depth);

/// Best single move over `candidates` for the one remaining free node;
/// returns a no-op-free MoveSet (empty when staying is best). Ties go to the
/// lowest cluster id.
MoveSet greedy_shortcut(const Graph& g, const Partition& p, NodeId node,
                        std::span<const ClusterId> candidates);

struct PassResult {
  bool modified = false;
  double gain = 0.0;  // sum of accepted modularity gains
};

/// One sweep of local subproblems over seed-shuffled anchors. Every applied
/// MoveSet has strictly positive gain; infeasible solver output falls back to
/// identity for the violating nodes (logged to stderr, pass continues).
PassResult run_one_pass(const Graph& g, Partition& p, const Hyperparams& hp,
                        double gamma, SolverDispatch& solver, std::mt19937_64& rng,
                        RunStats& stats);

/// Hierarchical modularity maximization with QUBO-solved local moves:
/// sweeps passes until a level converges, aggregates, and repeats until the
/// partition stays singleton. Requires m(g) > 0.
ClusterResult ising_louvain(const Graph& g, const Hyperparams& hp,
                            SolverDispatch& solver);

}  // namespace ilouvain
