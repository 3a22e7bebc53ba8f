#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "ilouvain/graph.hpp"
#include "ilouvain/partition.hpp"

#include "helpers.hpp"

using namespace ilouvain;

namespace {

// Recomputes Sigma_tot and w_in of one cluster straight from the adjacency.
struct ClusterSums {
  double sigma = 0.0;
  double w_in = 0.0;
};

ClusterSums brute_sums(const Graph& g, const Partition& p, ClusterId c) {
  ClusterSums s;
  for (NodeId i : p.members(c)) {
    s.sigma += g.degree(i);
    s.w_in += g.self_loop(i);
    for (const auto& nb : g.neighbors(i))
      if (nb.node > i && p.cluster_of(nb.node) == c) s.w_in += nb.weight;
  }
  return s;
}

void check_consistency(const Graph& g, const Partition& p) {
  int nonempty = 0;
  for (ClusterId c : p.cluster_ids()) {
    ++nonempty;
    ClusterSums s = brute_sums(g, p, c);
    CHECK(p.cluster_degree(c) == doctest::Approx(s.sigma).epsilon(1e-12));
    CHECK(p.intra_weight(c) == doctest::Approx(s.w_in).epsilon(1e-12));
    CHECK(p.cluster_size(c) == static_cast<int>(p.members(c).size()));
  }
  CHECK(nonempty == p.num_clusters());
}

}  // namespace

TEST_CASE("singletons start with one node per cluster") {
  Graph g = builtin_graph("two_triangles");
  Partition p = Partition::singletons(g);
  CHECK(p.num_clusters() == 6);
  for (NodeId i = 0; i < 6; ++i) {
    CHECK(p.cluster_of(i) == i);
    CHECK(p.cluster_degree(i) == doctest::Approx(g.degree(i)));
    CHECK(p.intra_weight(i) == doctest::Approx(0.0));
    CHECK(p.cluster_size(i) == 1);
  }
}

TEST_CASE("constructor accumulates cluster sums") {
  Graph g = builtin_graph("two_triangles");
  Partition p(g, {0, 0, 0, 1, 1, 1});
  CHECK(p.num_clusters() == 2);
  CHECK(p.cluster_degree(0) == doctest::Approx(7.0));
  CHECK(p.intra_weight(0) == doctest::Approx(3.0));
  CHECK(p.cluster_degree(1) == doctest::Approx(7.0));
  CHECK(p.intra_weight(1) == doctest::Approx(3.0));
  check_consistency(g, p);
}

TEST_CASE("constructor validates input") {
  Graph g = builtin_graph("two_triangles");
  CHECK_THROWS_AS(Partition(g, {0, 0, 0}), std::invalid_argument);           // short
  CHECK_THROWS_AS(Partition(g, {0, 0, 0, 1, 1, 9}), std::invalid_argument);  // id >= n
  CHECK_THROWS_AS(Partition(g, {0, 0, 0, 1, 1, -2}), std::invalid_argument);
}

TEST_CASE("self-loops count toward intra weight") {
  GraphBuilder b;
  b.add_nodes(2);
  b.add_edge(0, 1, 1.0);
  b.add_edge(0, 0, 2.0);
  Graph g = b.build();
  Partition p(g, {0, 0});
  CHECK(p.intra_weight(0) == doctest::Approx(3.0));      // edge + loop once
  CHECK(p.cluster_degree(0) == doctest::Approx(1 + 5.0));  // k_0 = 1 + 2*2
}

TEST_CASE("move_node keeps sums consistent") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Graph g = testing::random_graph(rng, 20, 0.2, true, 0.15);
    Partition p(g, testing::random_assignment(rng, 20, 4));
    std::uniform_int_distribution<int> node(0, 19);
    for (int step = 0; step < 40; ++step) {
      NodeId i = node(rng);
      auto ids = p.cluster_ids();
      std::uniform_int_distribution<size_t> pick(0, ids.size());
      size_t k = pick(rng);
      ClusterId target = k == ids.size() ? kNewCluster : ids[k];
      p.move_node(i, target);
      CHECK(p.cluster_exists(p.cluster_of(i)));
    }
    check_consistency(g, p);
  }
}

TEST_CASE("moving the last member drops the cluster") {
  Graph g = builtin_graph("two_triangles");
  Partition p = Partition::singletons(g);
  p.move_node(0, 1);
  CHECK(p.num_clusters() == 5);
  CHECK_FALSE(p.cluster_exists(0));
  CHECK(p.cluster_size(1) == 2);
}

TEST_CASE("kNewCluster reuses the lowest freed id") {
  Graph g = builtin_graph("two_triangles");
  Partition p = Partition::singletons(g);
  p.move_node(0, 3);  // frees id 0
  p.move_node(1, 3);  // frees id 1
  REQUIRE(p.num_clusters() == 4);

  p.move_node(5, kNewCluster);
  CHECK(p.cluster_of(5) == 0);  // lowest free id first
  p.move_node(4, kNewCluster);
  CHECK(p.cluster_of(4) == 1);
  // both movers were singletons, so the cluster count is unchanged
  CHECK(p.num_clusters() == 4);
  check_consistency(g, p);
}

TEST_CASE("kNewCluster extends the id space when nothing is free") {
  Graph g = builtin_graph("two_triangles");
  Partition p(g, {0, 0, 0, 1, 1, 1});
  p.move_node(3, kNewCluster);
  CHECK(p.cluster_of(3) == 2);
  CHECK(p.id_bound() >= 3);
  CHECK(p.num_clusters() == 3);
  check_consistency(g, p);
}

TEST_CASE("move_node rejects unknown targets") {
  Graph g = builtin_graph("two_triangles");
  Partition p(g, {0, 0, 0, 1, 1, 1});
  CHECK_THROWS_AS(p.move_node(0, 5), std::invalid_argument);
  p.move_node(3, 0);
  p.move_node(4, 0);
  p.move_node(5, 0);  // cluster 1 now empty
  CHECK_THROWS_AS(p.move_node(0, 1), std::invalid_argument);
}

TEST_CASE("no-op move leaves everything untouched") {
  Graph g = builtin_graph("two_triangles");
  Partition p(g, {0, 0, 0, 1, 1, 1});
  double sigma = p.cluster_degree(0), win = p.intra_weight(0);
  p.move_node(0, 0);
  CHECK(p.cluster_degree(0) == sigma);
  CHECK(p.intra_weight(0) == win);
  CHECK(p.num_clusters() == 2);
}

TEST_CASE("members and cluster_ids agree") {
  std::mt19937_64 rng(5);
  Graph g = testing::random_graph(rng, 15, 0.3);
  Partition p(g, testing::random_assignment(rng, 15, 5));
  std::set<NodeId> seen;
  for (ClusterId c : p.cluster_ids())
    for (NodeId i : p.members(c)) {
      CHECK(p.cluster_of(i) == c);
      CHECK(seen.insert(i).second);
    }
  CHECK(static_cast<int>(seen.size()) == 15);
}
