#include "ilouvain/modularity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace ilouvain {

namespace {

double require_m(const Graph& g) {
  double m = g.total_weight();
  if (!(m > 0.0)) throw std::invalid_argument("graph has no edge weight (m == 0)");
  return m;
}

double cluster_term(double w_in, double sigma_tot, double m) {
  double frac = sigma_tot / (2.0 * m);
  return w_in / m - frac * frac;
}

}  // namespace

double modularity(const Graph& g, const Partition& p) {
  double m = require_m(g);
  double q = 0.0;
  for (ClusterId c : p.cluster_ids())
    q += cluster_term(p.intra_weight(c), p.cluster_degree(c), m);
  return q;
}

double modularity_of_assignment(const Graph& g, std::span<const ClusterId> assignment) {
  double m = require_m(g);
  if (static_cast<int>(assignment.size()) != g.num_nodes())
    throw std::invalid_argument("assignment length != node count");
  std::unordered_map<ClusterId, std::pair<double, double>> acc;  // sigma, w_in
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    ClusterId c = assignment[i];
    if (c < 0) throw std::invalid_argument("negative cluster id");
    auto& [sigma, w_in] = acc[c];
    sigma += g.degree(i);
    w_in += g.self_loop(i);
    for (const auto& nb : g.neighbors(i))
      if (nb.node < i && assignment[nb.node] == c) w_in += nb.weight;
  }
  double q = 0.0;
  for (const auto& [c, sw] : acc) q += cluster_term(sw.second, sw.first, m);
  return q;
}

namespace {

/// Shared walk for mod_gain / apply_moves: validates the set, resolves
/// kNewCluster targets, and streams exact sequential updates through `step`.
/// The overlay view keeps the walk independent of the partition's storage.
/// `exists` must answer for the partition as it was at entry: apply_moves
/// mutates sizes mid-set, and a transiently emptied target is still valid.
template <typename ExistsFn, typename TouchFn, typename StepFn>
void walk_moves(const Graph& g, const Partition& p, const MoveSet& moves,
                ClusterId first_fresh_id, ExistsFn&& exists, TouchFn&& touch,
                StepFn&& step) {
  std::unordered_map<NodeId, ClusterId> overlay;
  overlay.reserve(moves.size());
  ClusterId next_fresh = first_fresh_id;
  for (const Move& mv : moves) {
    if (mv.node < 0 || mv.node >= g.num_nodes())
      throw std::invalid_argument("move node out of range");
    if (overlay.count(mv.node)) throw std::invalid_argument("duplicate node in MoveSet");
    ClusterId to = mv.target;
    if (to == kNewCluster)
      to = next_fresh++;
    else if (!exists(to))
      throw std::invalid_argument("move target is not an existing cluster");
    auto view = [&](NodeId j) {
      auto it = overlay.find(j);
      return it == overlay.end() ? p.cluster_of(j) : it->second;
    };
    ClusterId from = view(mv.node);
    touch(from);
    touch(to);
    if (from != to) {
      double l_from = 0.0, l_to = 0.0;
      for (const auto& nb : g.neighbors(mv.node)) {
        ClusterId cj = view(nb.node);
        if (cj == from) l_from += nb.weight;
        if (cj == to) l_to += nb.weight;
      }
      step(mv.node, from, to, l_from, l_to);
    }
    overlay[mv.node] = to;
  }
}

}  // namespace

double mod_gain(const Graph& g, const Partition& p, const MoveSet& moves) {
  double m = require_m(g);
  // Fresh clusters get ids past every real one; they start from zero sums.
  ClusterId fresh_base = p.id_bound();
  std::unordered_map<ClusterId, std::pair<double, double>> cur;  // sigma, w_in
  double before = 0.0;
  auto touch = [&](ClusterId c) {
    if (cur.count(c)) return;
    if (c >= fresh_base || !p.cluster_exists(c)) {
      cur[c] = {0.0, 0.0};
    } else {
      cur[c] = {p.cluster_degree(c), p.intra_weight(c)};
      before += cluster_term(p.intra_weight(c), p.cluster_degree(c), m);
    }
  };
  auto step = [&](NodeId i, ClusterId from, ClusterId to, double l_from, double l_to) {
    double k = g.degree(i), self = g.self_loop(i);
    cur[from].first -= k;
    cur[from].second -= l_from + self;
    cur[to].first += k;
    cur[to].second += l_to + self;
  };
  auto exists = [&](ClusterId c) { return p.cluster_exists(c); };
  walk_moves(g, p, moves, fresh_base, exists, touch, step);
  double after = 0.0;
  for (const auto& [c, sw] : cur) after += cluster_term(sw.second, sw.first, m);
  return after - before;
}

void apply_moves(Partition& p, const MoveSet& moves) {
  const Graph& g = *p.g_;
  // Fresh ids extend the arrays; freed ids are recycled only afterwards so a
  // transiently emptied cluster keeps its identity for later moves.
  ClusterId fresh_base = static_cast<ClusterId>(p.size_.size());
  std::unordered_set<ClusterId> affected;
  auto touch = [&](ClusterId c) {
    if (c >= static_cast<ClusterId>(p.size_.size())) {
      p.sigma_tot_.resize(c + 1, 0.0);
      p.w_in_.resize(c + 1, 0.0);
      p.size_.resize(c + 1, 0);
    }
    affected.insert(c);
  };
  auto step = [&](NodeId i, ClusterId from, ClusterId to, double l_from, double l_to) {
    double k = g.degree(i), self = g.self_loop(i);
    p.sigma_tot_[from] -= k;
    p.w_in_[from] -= l_from + self;
    --p.size_[from];
    p.sigma_tot_[to] += k;
    p.w_in_[to] += l_to + self;
    ++p.size_[to];
    p.assignment_[i] = to;
  };
  // First touch happens before any mutation of that cluster, so it snapshots
  // the pre-state size.
  std::unordered_map<ClusterId, int> size_before;
  auto touch_counting = [&](ClusterId c) {
    if (!size_before.count(c))
      size_before[c] = c < static_cast<ClusterId>(p.size_.size()) ? p.size_[c] : 0;
    touch(c);
  };
  auto exists_at_entry = [&](ClusterId c) {
    auto it = size_before.find(c);
    return it != size_before.end() ? it->second > 0 : p.cluster_exists(c);
  };
  walk_moves(g, p, moves, fresh_base, exists_at_entry, touch_counting, step);
  int nonempty_before = 0;
  for (const auto& [c, sz] : size_before)
    if (sz > 0) ++nonempty_before;
  int nonempty_after = 0;
  for (ClusterId c : affected) {
    if (p.size_[c] > 0) {
      ++nonempty_after;
    } else {
      p.sigma_tot_[c] = 0.0;
      p.w_in_[c] = 0.0;
      if (c < fresh_base) p.free_ids_.push_back(c);
    }
  }
  p.num_clusters_ += nonempty_after - nonempty_before;
}

double single_move_gain(const Graph& g, const Partition& p, NodeId i, ClusterId target) {
  double m = require_m(g);
  ClusterId from = p.cluster_of(i);
  if (target == from) return 0.0;
  double l_from = 0.0, l_to = 0.0, sigma_to = 0.0;
  if (target != kNewCluster) {
    if (!p.cluster_exists(target))
      throw std::invalid_argument("move target is not an existing cluster");
    sigma_to = p.cluster_degree(target);
  }
  for (const auto& nb : g.neighbors(i)) {
    ClusterId c = p.cluster_of(nb.node);
    if (c == from) l_from += nb.weight;
    if (c == target) l_to += nb.weight;
  }
  double k = g.degree(i);
  return (l_to - l_from) / m -
         k * (sigma_to - p.cluster_degree(from) + k) / (2.0 * m * m);
}

std::vector<ClusterGain> neighbor_cluster_gains(const Graph& g, const Partition& p,
                                                NodeId i) {
  double m = require_m(g);
  ClusterId from = p.cluster_of(i);
  std::vector<ClusterGain> out;
  std::unordered_map<ClusterId, int> slot;
  auto index_of = [&](ClusterId c) {
    auto [it, fresh] = slot.try_emplace(c, static_cast<int>(out.size()));
    if (fresh) out.push_back({c, 0.0});  // gain doubles as the link sum first
    return it->second;
  };
  index_of(from);
  for (const auto& nb : g.neighbors(i))
    out[index_of(p.cluster_of(nb.node))].gain += nb.weight;
  double k = g.degree(i);
  double l_from = out[slot[from]].gain;
  double sigma_from = p.cluster_degree(from);
  for (auto& cg : out) {
    if (cg.cluster == from) {
      cg.gain = 0.0;
      continue;
    }
    double l_to = cg.gain;
    cg.gain = (l_to - l_from) / m -
              k * (p.cluster_degree(cg.cluster) - sigma_from + k) / (2.0 * m * m);
  }
  return out;
}

namespace {

struct BruteForce {
  const Graph& g;
  double m;
  int n;
  std::vector<ClusterId> assign;
  std::vector<double> sigma, w_in;
  double q_acc = 0.0;
  double best_q;
  std::vector<ClusterId> best_assign;

  explicit BruteForce(const Graph& graph)
      : g(graph),
        m(require_m(graph)),
        n(graph.num_nodes()),
        assign(n, 0),
        sigma(n, 0.0),
        w_in(n, 0.0),
        best_q(-2.0) {}

  void recurse(NodeId i, int used) {
    if (i == n) {
      if (q_acc > best_q + 1e-15) {
        best_q = q_acc;
        best_assign = assign;
      }
      return;
    }
    double k = g.degree(i), self = g.self_loop(i);
    int limit = std::min(used + 1, n);
    for (ClusterId c = 0; c < limit; ++c) {
      double link = 0.0;
      for (const auto& nb : g.neighbors(i))
        if (nb.node < i && assign[nb.node] == c) link += nb.weight;
      double old_term = cluster_term(w_in[c], sigma[c], m);
      sigma[c] += k;
      w_in[c] += link + self;
      double delta = cluster_term(w_in[c], sigma[c], m) - old_term;
      q_acc += delta;
      assign[i] = c;
      recurse(i + 1, std::max(used, c + 1));
      q_acc -= delta;
      sigma[c] -= k;
      w_in[c] -= link + self;
    }
  }
};

}  // namespace

BruteForceResult brute_force_best(const Graph& g) {
  if (g.num_nodes() > 12)
    throw std::invalid_argument("exhaustive partition search is capped at 12 nodes");
  if (g.num_nodes() == 0) return {{}, 0.0};
  BruteForce bf(g);
  bf.recurse(0, 0);
  return {std::move(bf.best_assign), bf.best_q};
}

}  // namespace ilouvain
