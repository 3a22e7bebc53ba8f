#include "ilouvain/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "ilouvain/errors.hpp"

namespace ilouvain {

namespace {

std::int64_t pair_key(int u, int v) {
  return (static_cast<std::int64_t>(u) << 32) | static_cast<std::uint32_t>(v);
}

}  // namespace

QuboModel::QuboModel(int num_vars, std::vector<std::pair<int, double>> linear,
                     std::vector<std::tuple<int, int, double>> quadratic,
                     double offset)
    : num_vars_(num_vars), offset_(offset) {
  if (num_vars < 0) throw std::invalid_argument("negative variable count");
  linear_.assign(num_vars, 0.0);
  for (auto [i, c] : linear) {
    if (i < 0 || i >= num_vars) throw std::invalid_argument("linear index out of range");
    linear_[i] += c;
  }
  std::unordered_map<std::int64_t, double> acc;
  for (auto [i, j, c] : quadratic) {
    if (i < 0 || i >= num_vars || j < 0 || j >= num_vars)
      throw std::invalid_argument("quadratic index out of range");
    if (i == j)
      linear_[i] += c;  // x^2 == x
    else
      acc[pair_key(std::min(i, j), std::max(i, j))] += c;
  }
  finalize(std::move(acc));
}

void QuboModel::finalize(std::unordered_map<std::int64_t, double>&& quad_acc) {
  quad_.clear();
  quad_.reserve(quad_acc.size());
  for (const auto& [key, coeff] : quad_acc) {
    if (coeff == 0.0) continue;
    quad_.push_back({static_cast<int>(key >> 32),
                     static_cast<int>(key & 0xffffffff), coeff});
  }
  std::sort(quad_.begin(), quad_.end(), [](const QuadTerm& a, const QuadTerm& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
}

std::optional<int> QuboModel::var_index(NodeId node, ClusterId cluster) const {
  for (int v = 0; v < static_cast<int>(vars_.size()); ++v)
    if (vars_[v].node == node && vars_[v].cluster == cluster) return v;
  return std::nullopt;
}

Bits QuboModel::identity_bits() const {
  if (!has_var_map()) throw std::logic_error("model has no variable map");
  Bits b(num_vars_, 0);
  for (std::size_t s = 0; s < free_nodes_.size(); ++s) {
    auto v = var_index(free_nodes_[s], identity_[s]);
    if (!v) throw std::logic_error("identity cluster missing from candidates");
    b[*v] = 1;
  }
  return b;
}

nlohmann::json QuboModel::to_json() const {
  nlohmann::json lin = nlohmann::json::array();
  for (int i = 0; i < num_vars_; ++i)
    if (linear_[i] != 0.0) lin.push_back({i, linear_[i]});
  nlohmann::json quad = nlohmann::json::array();
  for (const auto& t : quad_) quad.push_back({t.u, t.v, t.coeff});
  return {{"num_vars", num_vars_},
          {"linear", std::move(lin)},
          {"quadratic", std::move(quad)},
          {"offset", offset_}};
}

QuboModel QuboModel::from_json(const nlohmann::json& j) {
  try {
    int num_vars = j.at("num_vars").get<int>();
    std::vector<std::pair<int, double>> linear;
    for (const auto& e : j.at("linear")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("linear entry");
      linear.emplace_back(e[0].get<int>(), e[1].get<double>());
    }
    std::vector<std::tuple<int, int, double>> quad;
    for (const auto& e : j.at("quadratic")) {
      if (!e.is_array() || e.size() != 3) throw std::invalid_argument("quadratic entry");
      quad.emplace_back(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
    }
    double offset = j.value("offset", 0.0);
    return QuboModel(num_vars, std::move(linear), std::move(quad), offset);
  } catch (const std::exception& e) {
    throw ProtocolViolation(std::string("malformed model payload: ") + e.what());
  }
}

QuboModel build_qubo(const Graph& g, const Partition& p, const LocalProblem& lp,
                     int capacity) {
  double m = g.total_weight();
  if (!(m > 0.0)) throw std::invalid_argument("graph has no edge weight (m == 0)");
  std::size_t s_count = lp.free_nodes.size();
  if (lp.candidates.size() != s_count)
    throw std::invalid_argument("candidates must parallel free_nodes");

  int num_vars = 0;
  std::unordered_set<NodeId> free_set;
  free_set.reserve(s_count * 2);
  for (std::size_t s = 0; s < s_count; ++s) {
    NodeId i = lp.free_nodes[s];
    if (i < 0 || i >= g.num_nodes()) throw std::invalid_argument("free node out of range");
    if (!free_set.insert(i).second) throw std::invalid_argument("duplicate free node");
    const auto& cand = lp.candidates[s];
    if (cand.empty()) throw std::invalid_argument("empty candidate list");
    bool has_current = false;
    for (std::size_t a = 0; a < cand.size(); ++a) {
      if (!p.cluster_exists(cand[a]))
        throw std::invalid_argument("candidate cluster does not exist");
      for (std::size_t b = a + 1; b < cand.size(); ++b)
        if (cand[a] == cand[b]) throw std::invalid_argument("duplicate candidate");
      has_current |= cand[a] == p.cluster_of(i);
    }
    if (!has_current)
      throw std::invalid_argument("candidates must include the current cluster");
    num_vars += static_cast<int>(cand.size());
  }
  if (num_vars > capacity) throw SizeExceeded(num_vars, capacity);

  QuboModel q;
  q.num_vars_ = num_vars;
  q.linear_.assign(num_vars, 0.0);
  q.offset_ = lp.gamma * static_cast<double>(s_count);
  q.vars_.reserve(num_vars);
  q.free_nodes_ = lp.free_nodes;
  q.identity_.reserve(s_count);

  // Per candidate cluster l: the free nodes owning variable (.,l) and the
  // fixed-part degree sum K_{C_l} (cluster degree minus free members).
  std::unordered_map<ClusterId, std::vector<int>> vars_of_cluster;
  std::unordered_map<ClusterId, double> fixed_degree;
  for (std::size_t s = 0; s < s_count; ++s) {
    NodeId i = lp.free_nodes[s];
    q.identity_.push_back(p.cluster_of(i));
    for (ClusterId c : lp.candidates[s]) {
      vars_of_cluster[c].push_back(static_cast<int>(q.vars_.size()));
      fixed_degree.try_emplace(c, p.cluster_degree(c));
      q.vars_.push_back({i, c});
    }
  }
  for (NodeId i : lp.free_nodes) {
    auto it = fixed_degree.find(p.cluster_of(i));
    if (it != fixed_degree.end()) it->second -= g.degree(i);
  }

  // One adjacency scan per free node: links to the fixed part of each
  // candidate cluster, plus edge weights between free pairs.
  std::unordered_map<std::int64_t, double> free_edge;  // key(min,max) node ids
  std::vector<std::unordered_map<ClusterId, double>> fixed_links(s_count);
  std::unordered_map<NodeId, std::size_t> slot_of;
  for (std::size_t s = 0; s < s_count; ++s) slot_of[lp.free_nodes[s]] = s;
  for (std::size_t s = 0; s < s_count; ++s) {
    NodeId i = lp.free_nodes[s];
    auto& links = fixed_links[s];
    for (ClusterId c : lp.candidates[s]) links.try_emplace(c, 0.0);
    for (const auto& nb : g.neighbors(i)) {
      if (free_set.count(nb.node)) {
        if (i < nb.node) free_edge[pair_key(i, nb.node)] = nb.weight;
        continue;
      }
      auto it = links.find(p.cluster_of(nb.node));
      if (it != links.end()) it->second += nb.weight;
    }
  }

  // Linear terms: leaving-cost of i plus interaction with the fixed part of
  // the chosen cluster, minus the one-hot reward.
  int v = 0;
  for (std::size_t s = 0; s < s_count; ++s) {
    NodeId i = lp.free_nodes[s];
    double k = g.degree(i);
    double self_term = k * k / (2.0 * m) - 2.0 * g.self_loop(i);
    for (ClusterId c : lp.candidates[s]) {
      double kc = fixed_degree[c];
      double w_ic = fixed_links[s].at(c);
      q.linear_[v++] = self_term + 2.0 * (k * kc / (2.0 * m) - w_ic) - lp.gamma;
    }
  }

  std::unordered_map<std::int64_t, double> quad;
  // Same-cluster pairs of free nodes.
  for (const auto& [c, vs] : vars_of_cluster) {
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a + 1; b < vs.size(); ++b) {
        NodeId ni = q.vars_[vs[a]].node, nj = q.vars_[vs[b]].node;
        double k2 = g.degree(ni) * g.degree(nj) / (2.0 * m);
        auto it = free_edge.find(pair_key(std::min(ni, nj), std::max(ni, nj)));
        double a_ij = it == free_edge.end() ? 0.0 : it->second;
        quad[pair_key(std::min(vs[a], vs[b]), std::max(vs[a], vs[b]))] +=
            2.0 * (k2 - a_ij);
      }
    }
  }
  // One-hot penalty pairs within each node's candidate block.
  v = 0;
  for (std::size_t s = 0; s < s_count; ++s) {
    int width = static_cast<int>(lp.candidates[s].size());
    for (int a = 0; a < width; ++a)
      for (int b = a + 1; b < width; ++b)
        quad[pair_key(v + a, v + b)] += 2.0 * lp.gamma;
    v += width;
  }

  // Constant contribution of each candidate cluster's fixed part, so that
  // E(b) = -2m * (modularity share of the candidate clusters under b).
  for (const auto& [c, kc] : fixed_degree) {
    double fixed_w_in = p.intra_weight(c);
    for (std::size_t s = 0; s < s_count; ++s) {
      if (p.cluster_of(lp.free_nodes[s]) != c) continue;
      NodeId i = lp.free_nodes[s];
      fixed_w_in -= g.self_loop(i) + fixed_links[s].at(c);
    }
    for (const auto& [key, w] : free_edge) {
      NodeId a = static_cast<NodeId>(key >> 32);
      NodeId b = static_cast<NodeId>(key & 0xffffffff);
      if (p.cluster_of(a) == c && p.cluster_of(b) == c) fixed_w_in -= w;
    }
    q.offset_ += kc * kc / (2.0 * m) - 2.0 * fixed_w_in;
  }

  q.finalize(std::move(quad));
  return q;
}

DecodeResult decode(const QuboModel& q, std::span<const std::uint8_t> bits) {
  if (static_cast<int>(bits.size()) != q.num_vars())
    throw std::invalid_argument("bitstring length != variable count");
  if (!q.has_var_map()) throw std::logic_error("model has no variable map");
  DecodeResult out;
  const auto& vars = q.var_map();
  const auto& nodes = q.free_nodes();
  const auto& identity = q.identity_clusters();
  int v = 0;
  for (std::size_t s = 0; s < nodes.size(); ++s) {
    int chosen = -1, count = 0;
    for (; v < static_cast<int>(vars.size()) && vars[v].node == nodes[s]; ++v) {
      if (bits[v]) {
        ++count;
        chosen = vars[v].cluster;
      }
    }
    if (count != 1)
      out.infeasible.push_back(nodes[s]);
    else if (chosen != identity[s])
      out.moves.push_back({nodes[s], chosen});
  }
  return out;
}

double qubo_energy(const QuboModel& q, std::span<const std::uint8_t> bits) {
  if (static_cast<int>(bits.size()) != q.num_vars())
    throw std::invalid_argument("bitstring length != variable count");
  double e = q.offset();
  const auto& lin = q.linear();
  for (int i = 0; i < q.num_vars(); ++i)
    if (bits[i]) e += lin[i];
  for (const auto& t : q.quadratic())
    if (bits[t.u] && bits[t.v]) e += t.coeff;
  return e;
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s[i] = '1';
  return s;
}

Bits bits_from_string(const std::string& s) {
  Bits b(s.size(), 0);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      b[i] = 1;
    else if (s[i] != '0')
      throw ParseError("bitstring must contain only 0/1", 0);
  }
  return b;
}

}  // namespace ilouvain
