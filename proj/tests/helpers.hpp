#pragma once

// Seeded generators shared across the test suites. Everything here is
// deterministic given the caller's rng state.

#include <algorithm>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "ilouvain/graph.hpp"
#include "ilouvain/modularity.hpp"
#include "ilouvain/partition.hpp"
#include "ilouvain/qubo.hpp"

namespace ilouvain::testing {

/// Erdos-Renyi-ish graph with at least one edge. Weighted edges draw from
/// [0.5, 2.5]; self loops appear with probability self_prob per node.
inline Graph random_graph(std::mt19937_64& rng, int n, double edge_prob,
                          bool weighted = false, double self_prob = 0.0) {
  GraphBuilder b;
  b.add_nodes(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> w(0.5, 2.5);
  int edges = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (unit(rng) < edge_prob) {
        b.add_edge(i, j, weighted ? w(rng) : 1.0);
        ++edges;
      }
    }
    if (self_prob > 0.0 && unit(rng) < self_prob)
      b.add_edge(i, i, weighted ? w(rng) : 1.0);
  }
  if (edges == 0 && n >= 2) b.add_edge(0, 1, 1.0);
  return b.build();
}

/// Assignment over ids 0..min(k,n)-1 (clusters may be empty; ids stay < n).
inline std::vector<ClusterId> random_assignment(std::mt19937_64& rng, int n, int k) {
  std::uniform_int_distribution<int> pick(0, std::min(k, n) - 1);
  std::vector<ClusterId> a(n);
  for (int i = 0; i < n; ++i) a[i] = pick(rng);
  return a;
}

/// Local problem over a random subset of nodes; every candidate list holds
/// the node's current cluster plus up to extra distinct existing clusters.
inline LocalProblem random_local(const Graph& g, const Partition& p,
                                 std::mt19937_64& rng, int max_free, int max_extra) {
  std::vector<NodeId> nodes(g.num_nodes());
  for (int i = 0; i < g.num_nodes(); ++i) nodes[i] = i;
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::uniform_int_distribution<int> nfree(1, std::max(1, max_free));
  int take = std::min<int>(g.num_nodes(), nfree(rng));

  std::vector<ClusterId> ids = p.cluster_ids();
  LocalProblem lp;
  for (int t = 0; t < take; ++t) {
    NodeId i = nodes[t];
    std::set<ClusterId> cand{p.cluster_of(i)};
    std::uniform_int_distribution<int> nextra(0, max_extra);
    int extra = nextra(rng);
    std::uniform_int_distribution<size_t> pick(0, ids.size() - 1);
    for (int e = 0; e < extra; ++e) cand.insert(ids[pick(rng)]);
    lp.free_nodes.push_back(i);
    lp.candidates.emplace_back(cand.begin(), cand.end());
  }
  lp.gamma = std::max(1.0, g.max_degree());
  return lp;
}

/// One-hot bitstring choosing a uniform candidate for every free node.
inline Bits random_feasible_bits(const QuboModel& q, const LocalProblem& lp,
                                 std::mt19937_64& rng) {
  Bits bits(q.num_vars(), 0);
  for (size_t k = 0; k < lp.free_nodes.size(); ++k) {
    const auto& cand = lp.candidates[k];
    std::uniform_int_distribution<size_t> pick(0, cand.size() - 1);
    bits[*q.var_index(lp.free_nodes[k], cand[pick(rng)])] = 1;
  }
  return bits;
}

}  // namespace ilouvain::testing
