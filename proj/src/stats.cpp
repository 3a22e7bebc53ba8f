#include "ilouvain/stats.hpp"

#include <unordered_map>

namespace ilouvain {

std::vector<ClusterId> compact_assignment(const std::vector<ClusterId>& assignment) {
  std::vector<ClusterId> out(assignment.size());
  std::unordered_map<ClusterId, ClusterId> remap;
  remap.reserve(assignment.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    auto [it, fresh] =
        remap.try_emplace(assignment[i], static_cast<ClusterId>(remap.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace ilouvain
