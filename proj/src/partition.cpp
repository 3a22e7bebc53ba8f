#include "ilouvain/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace ilouvain {

Partition Partition::singletons(const Graph& g) {
  std::vector<ClusterId> a(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) a[i] = i;
  return Partition(g, std::move(a));
}

Partition::Partition(const Graph& g, std::vector<ClusterId> assignment)
    : g_(&g), assignment_(std::move(assignment)) {
  int n = g.num_nodes();
  if (static_cast<int>(assignment_.size()) != n)
    throw std::invalid_argument("assignment length != node count");
  ClusterId max_c = -1;
  for (ClusterId c : assignment_) {
    if (c < 0 || c >= n) throw std::invalid_argument("cluster id out of [0, n)");
    max_c = std::max(max_c, c);
  }
  sigma_tot_.assign(max_c + 1, 0.0);
  w_in_.assign(max_c + 1, 0.0);
  size_.assign(max_c + 1, 0);
  for (NodeId i = 0; i < n; ++i) {
    ClusterId c = assignment_[i];
    sigma_tot_[c] += g.degree(i);
    w_in_[c] += g.self_loop(i);
    ++size_[c];
    for (const auto& nb : g.neighbors(i))
      if (nb.node < i && assignment_[nb.node] == c) w_in_[c] += nb.weight;
  }
  for (ClusterId c = max_c; c >= 0; --c) {
    if (size_[c] > 0)
      ++num_clusters_;
    else
      free_ids_.push_back(c);
  }
}

std::vector<ClusterId> Partition::cluster_ids() const {
  std::vector<ClusterId> ids;
  ids.reserve(num_clusters_);
  for (ClusterId c = 0; c < static_cast<ClusterId>(size_.size()); ++c)
    if (size_[c] > 0) ids.push_back(c);
  return ids;
}

std::vector<NodeId> Partition::members(ClusterId c) const {
  std::vector<NodeId> out;
  for (NodeId i = 0; i < num_nodes(); ++i)
    if (assignment_[i] == c) out.push_back(i);
  return out;
}

std::vector<std::vector<NodeId>> Partition::members_by_cluster() const {
  std::vector<std::vector<NodeId>> out(size_.size());
  for (NodeId i = 0; i < num_nodes(); ++i) out[assignment_[i]].push_back(i);
  return out;
}

double Partition::links_to_cluster(NodeId i, ClusterId c) const {
  double s = 0.0;
  for (const auto& nb : g_->neighbors(i))
    if (assignment_[nb.node] == c) s += nb.weight;
  return s;
}

void Partition::move_node(NodeId i, ClusterId target) {
  if (i < 0 || i >= num_nodes()) throw std::invalid_argument("node out of range");
  ClusterId from = assignment_[i];
  if (target == kNewCluster) {
    if (!free_ids_.empty()) {
      // lowest id first, independent of the order clusters emptied
      auto lowest = std::min_element(free_ids_.begin(), free_ids_.end());
      target = *lowest;
      *lowest = free_ids_.back();
      free_ids_.pop_back();
    } else {
      target = static_cast<ClusterId>(size_.size());
      sigma_tot_.push_back(0.0);
      w_in_.push_back(0.0);
      size_.push_back(0);
    }
  } else if (!cluster_exists(target)) {
    throw std::invalid_argument("move target is not an existing cluster");
  }
  if (target == from) return;

  double k = g_->degree(i);
  double self = g_->self_loop(i);
  sigma_tot_[from] -= k;
  w_in_[from] -= links_to_cluster(i, from) + self;
  --size_[from];
  w_in_[target] += links_to_cluster(i, target) + self;
  sigma_tot_[target] += k;
  if (++size_[target] == 1) ++num_clusters_;
  assignment_[i] = target;
  if (size_[from] == 0) {
    sigma_tot_[from] = 0.0;  // shed float residue before the id is recycled
    w_in_[from] = 0.0;
    free_ids_.push_back(from);
    --num_clusters_;
  }
}

}  // namespace ilouvain
