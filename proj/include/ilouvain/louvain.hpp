#pragma once

#include <cstdint>

#include "ilouvain/graph.hpp"
#include "ilouvain/stats.hpp"

namespace ilouvain {

struct LouvainConfig {
  double theta = 1e-7;  // minimum pass gain to keep sweeping a level
  std::uint64_t seed = 0;
};

/// Classic greedy Louvain: sweep single-node moves to neighboring clusters
/// (strictly positive gain only, node order reshuffled each pass), aggregate,
/// repeat until a level merges nothing. Trace has one entry per pass plus the
/// starting value of each level.
ClusterResult louvain(const Graph& g, const LouvainConfig& cfg = {});

}  // namespace ilouvain
