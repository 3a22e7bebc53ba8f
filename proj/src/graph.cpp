#include "ilouvain/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ilouvain/errors.hpp"
#include "ilouvain/partition.hpp"

namespace ilouvain {

NodeId GraphBuilder::intern(const std::string& label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  NodeId id = static_cast<NodeId>(labels_.size());
  labels_.push_back(label);
  index_.emplace(label, id);
  self_loop_.push_back(0.0);
  return id;
}

void GraphBuilder::add_nodes(int count) {
  for (int i = 0; i < count; ++i) {
    NodeId id = static_cast<NodeId>(labels_.size());
    labels_.push_back(std::to_string(id));
    index_.emplace(labels_.back(), id);
    self_loop_.push_back(0.0);
  }
}

void GraphBuilder::add_edge(NodeId u, NodeId v, double weight) {
  int n = num_nodes();
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw std::invalid_argument("edge endpoint out of range");
  if (!(weight > 0.0) || !std::isfinite(weight))
    throw std::invalid_argument("edge weight must be positive and finite");
  if (u == v) {
    self_loop_[u] += weight;
    return;
  }
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v, weight});
}

Graph GraphBuilder::build() {
  int n = num_nodes();
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::vector<Edge> merged;
  merged.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
      merged.back().weight += e.weight;
    else
      merged.push_back(e);
  }

  Graph g;
  g.labels_ = labels_;
  g.self_loop_ = self_loop_;
  g.degree_.assign(n, 0.0);

  std::vector<int> counts(n, 0);
  for (const Edge& e : merged) {
    ++counts[e.u];
    ++counts[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + counts[i];
  g.adj_.resize(merged.size() * 2);
  std::vector<int> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : merged) {
    g.adj_[cursor[e.u]++] = {e.v, e.weight};
    g.adj_[cursor[e.v]++] = {e.u, e.weight};
    g.degree_[e.u] += e.weight;
    g.degree_[e.v] += e.weight;
    g.total_weight_ += e.weight;
  }
  g.num_edges_ = static_cast<int>(merged.size());
  for (int i = 0; i < n; ++i) {
    if (self_loop_[i] != 0.0) {
      g.degree_[i] += 2.0 * self_loop_[i];
      g.total_weight_ += self_loop_[i];
      ++g.num_edges_;
    }
    g.max_degree_ = std::max(g.max_degree_, g.degree_[i]);
  }

  edges_.clear();
  return g;
}

Graph load_edge_list(const std::filesystem::path& path, bool weighted) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);

  GraphBuilder b;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string u, v, w, extra;
    if (!(ls >> u)) continue;  // blank
    if (u[0] == '#') continue;
    if (!(ls >> v)) throw ParseError("expected two node tokens", lineno);
    double weight = 1.0;
    if (ls >> w) {
      if (ls >> extra) throw ParseError("too many fields", lineno);
      if (!weighted) throw ParseError("unexpected weight field", lineno);
      try {
        size_t used = 0;
        weight = std::stod(w, &used);
        if (used != w.size()) throw std::invalid_argument(w);
      } catch (const std::exception&) {
        throw ParseError("bad edge weight '" + w + "'", lineno);
      }
      if (!(weight > 0.0) || !std::isfinite(weight))
        throw ParseError("edge weight must be positive", lineno);
    }
    // intern order fixes the id assignment; argument order would not
    NodeId uid = b.intern(u);
    NodeId vid = b.intern(v);
    b.add_edge(uid, vid, weight);
  }
  return b.build();
}

namespace {

Graph from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
  GraphBuilder b;
  b.add_nodes(n);
  for (auto [u, v] : pairs) b.add_edge(u, v);
  return b.build();
}

Graph karate() {
  return from_pairs(
      34, {{0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},
           {0, 8},   {0, 10},  {0, 11},  {0, 12},  {0, 13},  {0, 17},  {0, 19},
           {0, 21},  {0, 31},  {1, 2},   {1, 3},   {1, 7},   {1, 13},  {1, 17},
           {1, 19},  {1, 21},  {1, 30},  {2, 3},   {2, 7},   {2, 8},   {2, 9},
           {2, 13},  {2, 27},  {2, 28},  {2, 32},  {3, 7},   {3, 12},  {3, 13},
           {4, 6},   {4, 10},  {5, 6},   {5, 10},  {5, 16},  {6, 16},  {8, 30},
           {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33}, {15, 32},
           {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32}, {20, 33}, {22, 32},
           {22, 33}, {23, 25}, {23, 27}, {23, 29}, {23, 32}, {23, 33}, {24, 25},
           {24, 27}, {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31},
           {28, 33}, {29, 32}, {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33},
           {32, 33}});
}

Graph two_triangles() {
  return from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

// Triangle {0,1,2} and pair {3,4} form one community; K4 {5,6,7,8} the other.
// The 1.25-weight bridges make any single node's departure unprofitable while
// moving {3,4} jointly into the K4 cluster gains modularity.
Graph trapped_pair() {
  constexpr std::pair<int, int> unit[] = {{0, 1}, {0, 2}, {1, 2}, {3, 4},
                                          {0, 3}, {1, 4}, {5, 6}, {5, 7},
                                          {5, 8}, {6, 7}, {6, 8}, {7, 8}};
  constexpr std::pair<int, int> bridge[] = {{3, 5}, {3, 6}, {4, 5}, {4, 6}};
  GraphBuilder b;
  b.add_nodes(9);
  for (auto [u, v] : unit) b.add_edge(u, v);
  for (auto [u, v] : bridge) b.add_edge(u, v, 1.25);
  return b.build();
}

}  // namespace

Graph builtin_graph(Builtin name) {
  switch (name) {
    case Builtin::Karate: return karate();
    case Builtin::TwoTriangles: return two_triangles();
    case Builtin::TrappedPair: return trapped_pair();
  }
  throw std::invalid_argument("unknown builtin");
}

Graph builtin_graph(const std::string& name) {
  if (name == "karate") return karate();
  if (name == "two_triangles") return two_triangles();
  if (name == "trapped_pair") return trapped_pair();
  throw std::invalid_argument("unknown builtin graph '" + name + "'");
}

bool is_builtin_name(const std::string& name) {
  return name == "karate" || name == "two_triangles" || name == "trapped_pair";
}

std::vector<int> trapped_pair_start_assignment() { return {0, 0, 0, 0, 0, 1, 1, 1, 1}; }

Aggregated aggregate(const Graph& g, const Partition& p) {
  std::vector<ClusterId> ids = p.cluster_ids();
  std::vector<int> super(ids.empty() ? 0 : ids.back() + 1, -1);
  for (int s = 0; s < static_cast<int>(ids.size()); ++s) super[ids[s]] = s;

  std::vector<NodeId> node_map(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) node_map[i] = super[p.cluster_of(i)];

  GraphBuilder b;
  b.add_nodes(static_cast<int>(ids.size()));
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    int si = node_map[i];
    if (g.self_loop(i) != 0.0) b.add_edge(si, si, g.self_loop(i));
    for (const auto& nb : g.neighbors(i)) {
      if (nb.node < i) continue;  // each undirected pair once
      b.add_edge(si, node_map[nb.node], nb.weight);
    }
  }
  return {b.build(), std::move(node_map)};
}

}  // namespace ilouvain
