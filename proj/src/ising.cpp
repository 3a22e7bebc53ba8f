#include "ilouvain/ising.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <iostream>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "ilouvain/errors.hpp"

namespace ilouvain {

const char* to_string(NodeStrategy s) {
  switch (s) {
    case NodeStrategy::Random: return "random";
    case NodeStrategy::SlidingWindow: return "sliding_window";
    case NodeStrategy::Bfs: return "bfs";
  }
  return "?";
}

const char* to_string(ClusterStrategy s) {
  switch (s) {
    case ClusterStrategy::Bfs: return "bfs";
    case ClusterStrategy::SemiGreedy: return "semi_greedy";
  }
  return "?";
}

NodeStrategy node_strategy_from_string(const std::string& s) {
  if (s == "random") return NodeStrategy::Random;
  if (s == "sliding_window") return NodeStrategy::SlidingWindow;
  if (s == "bfs") return NodeStrategy::Bfs;
  throw std::invalid_argument("unknown node strategy '" + s + "'");
}

ClusterStrategy cluster_strategy_from_string(const std::string& s) {
  if (s == "bfs") return ClusterStrategy::Bfs;
  if (s == "semi_greedy") return ClusterStrategy::SemiGreedy;
  throw std::invalid_argument("unknown cluster strategy '" + s + "'");
}

void Hyperparams::validate() const {
  if (max_nodes < 1) throw std::invalid_argument("max_nodes must be >= 1");
  if (max_clusters < 1) throw std::invalid_argument("max_clusters must be >= 1");
  if (max_node_visits < 1) throw std::invalid_argument("max_node_visits must be >= 1");
  if (bfs_depth < 1) throw std::invalid_argument("bfs_depth must be >= 1");
  if (counter_max_out < 1) throw std::invalid_argument("counter_max_out must be >= 1");
  if (counter_max_in < 1) throw std::invalid_argument("counter_max_in must be >= 1");
  if (!(theta >= 0.0)) throw std::invalid_argument("theta must be >= 0");
  if (gamma && !(*gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (solver_timeout.count() <= 0) throw std::invalid_argument("solver_timeout must be > 0");
}

namespace {

bool eligible(const VisitLedger& ledger, int max_visits, NodeId i) {
  return ledger.visits[i] < max_visits;
}

}  // namespace

std::vector<NodeId> select_nodes_bfs(const Graph& g, NodeId anchor, int bfs_depth,
                                     int max_nodes, const VisitLedger& ledger,
                                     int max_visits) {
  std::vector<NodeId> s;
  if (max_nodes < 1) return s;
  std::vector<char> seen(g.num_nodes(), 0);
  std::deque<std::pair<NodeId, int>> frontier;
  frontier.emplace_back(anchor, 0);
  seen[anchor] = 1;
  while (!frontier.empty() && static_cast<int>(s.size()) < max_nodes) {
    auto [i, depth] = frontier.front();
    frontier.pop_front();
    if (i == anchor || eligible(ledger, max_visits, i)) s.push_back(i);
    if (depth == bfs_depth) continue;
    for (const auto& nb : g.neighbors(i)) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        frontier.emplace_back(nb.node, depth + 1);
      }
    }
  }
  return s;
}

std::vector<NodeId> select_nodes_random(const Graph& g, NodeId anchor, int max_nodes,
                                        const VisitLedger& ledger, int max_visits,
                                        std::mt19937_64& rng) {
  std::vector<NodeId> s{anchor};
  std::vector<NodeId> pool;
  pool.reserve(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i)
    if (i != anchor && eligible(ledger, max_visits, i)) pool.push_back(i);
  int want = std::min<int>(max_nodes - 1, static_cast<int>(pool.size()));
  for (int k = 0; k < want; ++k) {
    std::uniform_int_distribution<int> pick(k, static_cast<int>(pool.size()) - 1);
    std::swap(pool[k], pool[pick(rng)]);
    s.push_back(pool[k]);
  }
  return s;
}

std::vector<NodeId> select_nodes_window(std::span<const NodeId> order, int anchor_pos,
                                        int max_nodes, const VisitLedger& ledger,
                                        int max_visits) {
  std::vector<NodeId> s;
  int n = static_cast<int>(order.size());
  for (int step = 0; step < n && static_cast<int>(s.size()) < max_nodes; ++step) {
    NodeId i = order[(anchor_pos + step) % n];
    if (step == 0 || eligible(ledger, max_visits, i)) s.push_back(i);
  }
  return s;
}

namespace {

std::vector<ClusterId> candidates_semi_greedy(const Graph& g, const Partition& p,
                                              NodeId i, int max_clusters) {
  std::vector<ClusterGain> gains = neighbor_cluster_gains(g, p, i);
  std::sort(gains.begin(), gains.end(), [](const ClusterGain& a, const ClusterGain& b) {
    return a.gain != b.gain ? a.gain > b.gain : a.cluster < b.cluster;
  });
  ClusterId current = p.cluster_of(i);
  std::vector<ClusterId> cand;
  int keep = std::min<int>(max_clusters, static_cast<int>(gains.size()));
  bool have_current = false;
  for (int k = 0; k < keep; ++k) {
    cand.push_back(gains[k].cluster);
    have_current |= gains[k].cluster == current;
  }
  if (!have_current) cand.back() = current;  // the current cluster always stays
  std::sort(cand.begin(), cand.end());
  return cand;
}

std::vector<ClusterId> candidates_bfs(const Graph& g, const Partition& p, NodeId i,
                                      int max_clusters, int bfs_depth) {
  ClusterId current = p.cluster_of(i);
  std::vector<ClusterId> cand{current};
  std::unordered_set<ClusterId> taken{current};
  std::vector<char> seen(g.num_nodes(), 0);
  std::deque<std::pair<NodeId, int>> frontier;
  frontier.emplace_back(i, 0);
  seen[i] = 1;
  while (!frontier.empty() && static_cast<int>(cand.size()) < max_clusters) {
    auto [j, depth] = frontier.front();
    frontier.pop_front();
    if (taken.insert(p.cluster_of(j)).second) cand.push_back(p.cluster_of(j));
    if (static_cast<int>(cand.size()) >= max_clusters || depth == bfs_depth) continue;
    for (const auto& nb : g.neighbors(j)) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        frontier.emplace_back(nb.node, depth + 1);
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  return cand;
}

}  // namespace

SelectedClusters select_clusters(const Graph& g, const Partition& p,
                                 std::span<const NodeId> s, ClusterStrategy strategy,
                                 int max_clusters, int bfs_depth) {
  SelectedClusters out;
  for (NodeId i : s) {
    std::vector<ClusterId> cand =
        strategy == ClusterStrategy::SemiGreedy
            ? candidates_semi_greedy(g, p, i, max_clusters)
            : candidates_bfs(g, p, i, max_clusters, bfs_depth);
    if (cand.size() <= 1) {
      out.forced.push_back({i, p.cluster_of(i)});
      ++out.eliminated;
    } else {
      out.problem.free_nodes.push_back(i);
      out.problem.candidates.push_back(std::move(cand));
    }
  }
  return out;
}

MoveSet greedy_shortcut(const Graph& g, const Partition& p, NodeId node,
                        std::span<const ClusterId> candidates) {
  ClusterId current = p.cluster_of(node);
  ClusterId best = current;
  double best_gain = 0.0;
  for (ClusterId c : candidates) {
    if (c == current) continue;
    double gain = single_move_gain(g, p, node, c);
    if (gain > best_gain || (gain == best_gain && best_gain > 0.0 && c < best)) {
      best = c;
      best_gain = gain;
    }
  }
  MoveSet moves;
  if (best_gain > 0.0) moves.push_back({node, best});
  return moves;
}

PassResult run_one_pass(const Graph& g, Partition& p, const Hyperparams& hp,
                        double gamma, SolverDispatch& solver, std::mt19937_64& rng,
                        RunStats& stats) {
  int n = g.num_nodes();
  VisitLedger ledger(n);
  PassResult out;

  std::vector<NodeId> anchors(n);
  std::iota(anchors.begin(), anchors.end(), 0);
  std::shuffle(anchors.begin(), anchors.end(), rng);

  // The sliding window walks a rotated copy of the sorted id list.
  std::vector<NodeId> window_order;
  std::vector<int> window_pos;
  if (hp.node_strategy == NodeStrategy::SlidingWindow && n > 0) {
    window_order.resize(n);
    std::iota(window_order.begin(), window_order.end(), 0);
    int shift = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    std::rotate(window_order.begin(), window_order.begin() + shift, window_order.end());
    window_pos.resize(n);
    for (int t = 0; t < n; ++t) window_pos[window_order[t]] = t;
  }

  for (NodeId anchor : anchors) {
    if (ledger.consumed[anchor] || !eligible(ledger, hp.max_node_visits, anchor))
      continue;

    std::vector<NodeId> s;
    switch (hp.node_strategy) {
      case NodeStrategy::Bfs:
        s = select_nodes_bfs(g, anchor, hp.bfs_depth, hp.max_nodes, ledger,
                             hp.max_node_visits);
        break;
      case NodeStrategy::Random:
        s = select_nodes_random(g, anchor, hp.max_nodes, ledger, hp.max_node_visits,
                                rng);
        break;
      case NodeStrategy::SlidingWindow:
        s = select_nodes_window(window_order, window_pos[anchor], hp.max_nodes, ledger,
                                hp.max_node_visits);
        break;
    }

    SelectedClusters sel = select_clusters(g, p, s, hp.cluster_strategy,
                                           hp.max_clusters, hp.bfs_depth);
    stats.single_candidate_eliminations += sel.eliminated;

    MoveSet moves;
    auto& free_nodes = sel.problem.free_nodes;
    auto& candidates = sel.problem.candidates;
    // Shrink to the solver's hard cap before building (the variable count is
    // the sum of candidate list sizes).
    if (solver.capacity() != kNoCapacity) {
      long vars = 0;
      for (const auto& c : candidates) vars += static_cast<long>(c.size());
      while (free_nodes.size() > 1 && vars > solver.capacity()) {
        vars -= static_cast<long>(candidates.back().size());
        free_nodes.pop_back();
        candidates.pop_back();
      }
    }

    if (free_nodes.size() == 1) {
      moves = greedy_shortcut(g, p, free_nodes[0], candidates[0]);
      ++stats.greedy_shortcuts;
      ++ledger.visits[free_nodes[0]];
      ledger.consumed[free_nodes[0]] = 1;
    } else if (!free_nodes.empty()) {
      sel.problem.gamma = gamma;
      QuboModel q = build_qubo(g, p, sel.problem, solver.capacity());
      SolverResult r = solver.solve(q, hp.solver_timeout, rng());
      ++stats.solver_calls;
      stats.qubo_sizes.push_back(q.num_vars());
      DecodeResult d = decode(q, r.bits);
      if (!d.feasible()) {
        ++stats.infeasible_decodes;
        std::cerr << "warning: solver returned an infeasible assignment for "
                  << d.infeasible.size() << " node(s); they keep their cluster\n";
      }
      moves = std::move(d.moves);
      for (NodeId i : free_nodes) {
        ++ledger.visits[i];
        ledger.consumed[i] = 1;
      }
    }

    moves.insert(moves.end(), sel.forced.begin(), sel.forced.end());
    if (moves.empty()) continue;
    double gain = mod_gain(g, p, moves);
    if (gain > 0.0) {
      apply_moves(p, moves);
      out.modified = true;
      out.gain += gain;
    }
  }
  return out;
}

ClusterResult ising_louvain(const Graph& g, const Hyperparams& hp,
                            SolverDispatch& solver) {
  hp.validate();
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(hp.random_seed);

  ClusterResult res;
  RunStats& stats = res.stats;

  Graph cur = g;
  std::vector<NodeId> node_of_orig(g.num_nodes());
  std::iota(node_of_orig.begin(), node_of_orig.end(), 0);

  Partition p = Partition::singletons(cur);
  double q = modularity(cur, p);
  int level = 0;
  stats.modularity_trace.push_back({level, 0, q});

  bool done = false;
  int counter_out = 0;
  double dq_out = std::numeric_limits<double>::infinity();
  while (!done && counter_out <= hp.counter_max_out && dq_out >= hp.theta) {
    ++counter_out;
    double gamma = hp.gamma.value_or(cur.max_degree());

    int counter_in = 0;
    bool modified = true;
    double dq_in = std::numeric_limits<double>::infinity();
    double level_gain = 0.0;
    int pass = 0;
    while (modified && counter_in <= hp.counter_max_in && dq_in >= hp.theta) {
      ++counter_in;
      PassResult pr = run_one_pass(cur, p, hp, gamma, solver, rng, stats);
      modified = pr.modified;
      dq_in = pr.gain;
      level_gain += pr.gain;
      q += pr.gain;
      stats.modularity_trace.push_back({level, ++pass, q});
    }
    dq_out = level_gain;

    if (p.num_clusters() == cur.num_nodes()) {
      done = true;
    } else {
      Aggregated agg = aggregate(cur, p);
      for (NodeId o = 0; o < g.num_nodes(); ++o)
        node_of_orig[o] = agg.node_map[node_of_orig[o]];
      cur = std::move(agg.graph);
      p = Partition::singletons(cur);
      ++level;
      stats.modularity_trace.push_back({level, 0, q});
    }
  }

  std::vector<ClusterId> assignment(g.num_nodes());
  for (NodeId o = 0; o < g.num_nodes(); ++o)
    assignment[o] = p.cluster_of(node_of_orig[o]);
  res.assignment = compact_assignment(assignment);
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
