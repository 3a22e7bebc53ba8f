#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "ilouvain/modularity.hpp"

namespace ilouvain {

using Bits = std::vector<std::uint8_t>;

/// One local subproblem: free nodes S whose memberships become variables,
/// per-node candidate cluster lists (always containing the node's current
/// cluster), and the one-hot penalty coefficient gamma.
struct LocalProblem {
  std::vector<NodeId> free_nodes;
  std::vector<std::vector<ClusterId>> candidates;  // parallel to free_nodes
  double gamma = 0.0;
};

/// Binary quadratic objective  E(x) = sum_v linear[v] x_v
///   + sum_{u<v} quad(u,v) x_u x_v + offset,
/// plus the variable <-> (node, candidate cluster) map when the model was
/// built from a LocalProblem. Immutable after construction.
class QuboModel {
 public:
  struct QuadTerm {
    int u, v;  // canonical u < v
    double coeff;
  };
  struct VarKey {
    NodeId node;
    ClusterId cluster;
  };

  /// Coefficient-only model (wire payloads, hand-built test models).
  QuboModel(int num_vars, std::vector<std::pair<int, double>> linear,
            std::vector<std::tuple<int, int, double>> quadratic, double offset = 0.0);

  int num_vars() const { return num_vars_; }
  double offset() const { return offset_; }
  const std::vector<double>& linear() const { return linear_; }
  /// Canonical (u < v), sorted, zero terms dropped.
  const std::vector<QuadTerm>& quadratic() const { return quad_; }

  bool has_var_map() const { return !vars_.empty(); }
  const VarKey& var(int v) const { return vars_[v]; }
  const std::vector<VarKey>& var_map() const { return vars_; }
  std::optional<int> var_index(NodeId node, ClusterId cluster) const;

  /// Free nodes in var-grouping order with the cluster each held at build
  /// time; empty for coefficient-only models.
  const std::vector<NodeId>& free_nodes() const { return free_nodes_; }
  const std::vector<ClusterId>& identity_clusters() const { return identity_; }

  /// Identity bitstring: every free node keeps its build-time cluster.
  /// Requires a var map.
  Bits identity_bits() const;

  /// Wire payload {num_vars, linear:[[i,c]...], quadratic:[[i,j,c]...], offset}.
  nlohmann::json to_json() const;
  static QuboModel from_json(const nlohmann::json& j);

 private:
  friend QuboModel build_qubo(const Graph&, const Partition&, const LocalProblem&, int);
  QuboModel() = default;
  void finalize(std::unordered_map<std::int64_t, double>&& quad_acc);

  int num_vars_ = 0;
  std::vector<double> linear_;
  std::vector<QuadTerm> quad_;
  double offset_ = 0.0;
  std::vector<VarKey> vars_;
  std::vector<NodeId> free_nodes_;
  std::vector<ClusterId> identity_;
};

inline constexpr int kNoCapacity = std::numeric_limits<int>::max();

/// Builds the local QUBO whose minimization over feasible (one-hot per node)
/// bitstrings maximizes the modularity gain of the joint reassignment:
/// for every feasible b,  E(b) - E(b_identity) = -2m * mod_gain(decode(b)).
/// Constant terms dropped along the way are accumulated into offset so that
/// E(b) = -2m * (modularity contribution of the candidate clusters).
/// Throws SizeExceeded when the variable count exceeds `capacity`.
QuboModel build_qubo(const Graph& g, const Partition& p, const LocalProblem& lp,
                     int capacity = kNoCapacity);

/// Decoded solver output. Nodes with exactly one set bit contribute a move
/// (no-ops omitted); nodes with zero or several set bits are reported in
/// `infeasible` and contribute nothing.
struct DecodeResult {
  MoveSet moves;
  std::vector<NodeId> infeasible;
  bool feasible() const { return infeasible.empty(); }
};

DecodeResult decode(const QuboModel& q, std::span<const std::uint8_t> bits);

double qubo_energy(const QuboModel& q, std::span<const std::uint8_t> bits);

std::string bits_to_string(std::span<const std::uint8_t> bits);
Bits bits_from_string(const std::string& s);  // throws ParseError on non-0/1

}  // namespace ilouvain
