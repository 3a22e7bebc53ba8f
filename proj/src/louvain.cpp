#include "ilouvain/louvain.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <utility>

#include "ilouvain/modularity.hpp"

namespace ilouvain {

ClusterResult louvain(const Graph& g, const LouvainConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(cfg.seed);

  ClusterResult res;
  RunStats& stats = res.stats;

  Graph cur = g;
  std::vector<NodeId> node_of_orig(g.num_nodes());
  std::iota(node_of_orig.begin(), node_of_orig.end(), 0);

  int level = 0;
  while (true) {
    Partition p = Partition::singletons(cur);
    double q = modularity(cur, p);
    stats.modularity_trace.push_back({level, 0, q});

    std::vector<NodeId> order(cur.num_nodes());
    std::iota(order.begin(), order.end(), 0);
    int pass = 0;
    while (true) {
      ++pass;
      std::shuffle(order.begin(), order.end(), rng);
      double pass_gain = 0.0;
      bool moved = false;
      for (NodeId i : order) {
        ClusterId best = p.cluster_of(i);
        double best_gain = 0.0;
        for (const auto& cg : neighbor_cluster_gains(cur, p, i)) {
          if (cg.gain > best_gain ||
              (cg.gain == best_gain && best_gain > 0.0 && cg.cluster < best)) {
            best = cg.cluster;
            best_gain = cg.gain;
          }
        }
        if (best_gain > 0.0) {
          p.move_node(i, best);
          pass_gain += best_gain;
          moved = true;
        }
      }
      q += pass_gain;
      stats.modularity_trace.push_back({level, pass, q});
      if (!moved || pass_gain < cfg.theta) break;
    }

    if (p.num_clusters() == cur.num_nodes()) {
      std::vector<ClusterId> assignment(g.num_nodes());
      for (NodeId o = 0; o < g.num_nodes(); ++o)
        assignment[o] = p.cluster_of(node_of_orig[o]);
      res.assignment = compact_assignment(assignment);
      break;
    }
    Aggregated agg = aggregate(cur, p);
    for (NodeId o = 0; o < g.num_nodes(); ++o)
      node_of_orig[o] = agg.node_map[node_of_orig[o]];
    cur = std::move(agg.graph);
    ++level;
  }

  res.modularity = modularity_of_assignment(g, res.assignment);
  res.num_clusters =
      res.assignment.empty()
          ? 0
          : 1 + *std::max_element(res.assignment.begin(), res.assignment.end());
  stats.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
  return res;
}

}  // namespace ilouvain
