#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "ilouvain/graph.hpp"
#include "ilouvain/louvain.hpp"
#include "ilouvain/modularity.hpp"

#include "helpers.hpp"

using namespace ilouvain;

namespace {

void check_result_consistency(const Graph& g, const ClusterResult& r) {
  REQUIRE(r.assignment.size() == static_cast<std::size_t>(g.num_nodes()));
  CHECK(r.modularity ==
        doctest::Approx(modularity_of_assignment(g, r.assignment)).epsilon(1e-10));
  std::vector<ClusterId> seen;
  for (ClusterId c : r.assignment)
    if (std::find(seen.begin(), seen.end(), c) == seen.end()) seen.push_back(c);
  CHECK(static_cast<int>(seen.size()) == r.num_clusters);
  CHECK(r.assignment == compact_assignment(r.assignment));
  for (std::size_t i = 1; i < r.stats.modularity_trace.size(); ++i)
    CHECK(r.stats.modularity_trace[i].q >=
          r.stats.modularity_trace[i - 1].q - 1e-12);
  CHECK(r.stats.solver_calls == 0);
  CHECK(r.stats.qubo_sizes.empty());
}

}  // namespace

TEST_CASE("two bridged triangles split at the bridge") {
  Graph g = builtin_graph("two_triangles");
  ClusterResult r = louvain(g);
  check_result_consistency(g, r);
  CHECK(r.num_clusters == 2);
  CHECK(r.modularity == doctest::Approx(5.0 / 14.0).epsilon(1e-10));
  CHECK(r.assignment == std::vector<ClusterId>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("disconnected triangles become separate clusters") {
  GraphBuilder b;
  b.add_nodes(6);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})
    b.add_edge(u, v);
  Graph g = b.build();
  ClusterResult r = louvain(g);
  check_result_consistency(g, r);
  CHECK(r.num_clusters == 2);
  CHECK(r.modularity == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("a single edge collapses to one cluster") {
  GraphBuilder b;
  b.add_nodes(2);
  b.add_edge(0, 1);
  ClusterResult r = louvain(b.build());
  CHECK(r.num_clusters == 1);
  CHECK(r.modularity == doctest::Approx(0.0));
}

TEST_CASE("karate reaches the known optimum over a handful of seeds") {
  Graph g = builtin_graph("karate");
  double best = -1.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ClusterResult r = louvain(g, {1e-7, seed});
    check_result_consistency(g, r);
    best = std::max(best, r.modularity);
  }
  CHECK(std::abs(best - 0.4198) <= 1e-4);
}

TEST_CASE("same seed gives the same clustering") {
  Graph g = builtin_graph("karate");
  ClusterResult a = louvain(g, {1e-7, 11});
  ClusterResult b = louvain(g, {1e-7, 11});
  CHECK(a.assignment == b.assignment);
  CHECK(a.modularity == b.modularity);
  ClusterResult c = louvain(g, {1e-7, 12});
  CHECK(c.modularity == doctest::Approx(modularity_of_assignment(g, c.assignment)));
}

TEST_CASE("random graphs: result is consistent and beats singletons") {
  std::mt19937_64 rng(307);
  for (int trial = 0; trial < 15; ++trial) {
    int n = 4 + static_cast<int>(rng() % 20);
    Graph g = testing::random_graph(rng, n, 0.25, trial % 2 == 1);
    ClusterResult r = louvain(g, {1e-7, static_cast<std::uint64_t>(trial)});
    check_result_consistency(g, r);
    std::vector<ClusterId> singletons(n);
    for (int i = 0; i < n; ++i) singletons[i] = i;
    CHECK(r.modularity >= modularity_of_assignment(g, singletons) - 1e-12);
  }
}

TEST_CASE("trace starts at the singleton value of level zero") {
  Graph g = builtin_graph("two_triangles");
  ClusterResult r = louvain(g);
  REQUIRE(!r.stats.modularity_trace.empty());
  const TraceEntry& first = r.stats.modularity_trace.front();
  CHECK(first.level == 0);
  CHECK(first.pass == 0);
  std::vector<ClusterId> singletons{0, 1, 2, 3, 4, 5};
  CHECK(first.q == doctest::Approx(modularity_of_assignment(g, singletons)));
  CHECK(r.stats.modularity_trace.back().q == doctest::Approx(r.modularity));
}
