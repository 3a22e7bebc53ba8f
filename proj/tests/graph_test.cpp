#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "ilouvain/errors.hpp"
#include "ilouvain/graph.hpp"
#include "ilouvain/modularity.hpp"
#include "ilouvain/partition.hpp"

#include "helpers.hpp"

using namespace ilouvain;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("builder merges parallel edges and tracks degrees") {
  GraphBuilder b;
  b.add_nodes(3);
  b.add_edge(0, 1, 1.0);
  b.add_edge(1, 0, 2.0);  // parallel, reversed
  b.add_edge(1, 2, 0.5);
  b.add_edge(2, 2, 3.0);  // self-loop
  Graph g = b.build();

  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 3);  // {0,1} merged, {1,2}, loop at 2
  CHECK(g.degree(0) == doctest::Approx(3.0));
  CHECK(g.degree(1) == doctest::Approx(3.5));
  CHECK(g.degree(2) == doctest::Approx(0.5 + 2 * 3.0));  // loop counts twice
  CHECK(g.self_loop(2) == doctest::Approx(3.0));
  CHECK(g.total_weight() == doctest::Approx(3.0 + 0.5 + 3.0));
  CHECK(g.max_degree() == doctest::Approx(6.5));

  // m = (sum of degrees) / 2 under the self-loop convention.
  double degree_sum = 0.0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) degree_sum += g.degree(i);
  CHECK(degree_sum / 2.0 == doctest::Approx(g.total_weight()));
}

TEST_CASE("adjacency is sorted by neighbor id") {
  std::mt19937_64 rng(7);
  Graph g = testing::random_graph(rng, 40, 0.2, true, 0.1);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    auto nbrs = g.neighbors(i);
    for (size_t k = 1; k < nbrs.size(); ++k) CHECK(nbrs[k - 1].node < nbrs[k].node);
    for (const auto& nb : nbrs) CHECK(nb.node != i);  // loops live off-adjacency
  }
}

TEST_CASE("labels intern in first-seen order") {
  GraphBuilder b;
  NodeId alice = b.intern("alice");
  NodeId bob = b.intern("bob");
  CHECK(alice == 0);
  CHECK(bob == 1);
  CHECK(b.intern("alice") == alice);
  b.add_edge(alice, bob);
  Graph g = b.build();
  CHECK(g.label(0) == "alice");
  CHECK(g.label(1) == "bob");

  GraphBuilder anon;
  anon.add_nodes(2);
  anon.add_edge(0, 1);
  CHECK(anon.build().label(1) == "1");
}

TEST_CASE("builder rejects bad edges") {
  GraphBuilder b;
  b.add_nodes(2);
  CHECK_THROWS_AS(b.add_edge(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(b.add_edge(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(b.add_edge(0, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(b.add_edge(0, 1, -2.0), std::invalid_argument);
}

TEST_CASE("load_edge_list parses comments, labels, and weights") {
  auto path = write_temp("ilouvain_t1.edges",
                         "# a comment\n"
                         "\n"
                         "b a\n"
                         "a c 2.5\n"
                         "c b 0.5\n");
  Graph g = load_edge_list(path, true);
  CHECK(g.num_nodes() == 3);
  CHECK(g.num_edges() == 3);
  CHECK(g.label(0) == "b");  // first-seen order
  CHECK(g.label(1) == "a");
  CHECK(g.label(2) == "c");
  CHECK(g.total_weight() == doctest::Approx(1.0 + 2.5 + 0.5));

  // Unweighted read of the same file fails on the 3-token lines.
  CHECK_THROWS_AS(load_edge_list(path, false), ParseError);
}

TEST_CASE("load_edge_list error reporting") {
  CHECK_THROWS_WITH_AS(load_edge_list("/nonexistent/zz.edges"), doctest::Contains("cannot open"),
                       ParseError);

  auto one_token = write_temp("ilouvain_t2.edges", "a\n");
  CHECK_THROWS_AS(load_edge_list(one_token), ParseError);

  auto bad_weight = write_temp("ilouvain_t3.edges", "a b pancake\n");
  try {
    load_edge_list(bad_weight, true);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }

  auto four_tokens = write_temp("ilouvain_t4.edges", "a b 1.0 extra\n");
  CHECK_THROWS_AS(load_edge_list(four_tokens, true), ParseError);

  auto negative = write_temp("ilouvain_t5.edges", "a b -1\n");
  CHECK_THROWS_AS(load_edge_list(negative, true), ParseError);
}

TEST_CASE("duplicate file edges merge by weight") {
  auto path = write_temp("ilouvain_t6.edges", "a b 1\nb a 2\n");
  Graph g = load_edge_list(path, true);
  CHECK(g.num_edges() == 1);
  CHECK(g.total_weight() == doctest::Approx(3.0));
}

TEST_CASE("builtin karate") {
  Graph g = builtin_graph("karate");
  CHECK(g.num_nodes() == 34);
  CHECK(g.num_edges() == 78);
  CHECK(g.total_weight() == doctest::Approx(78.0));
  CHECK(g.degree(0) == doctest::Approx(16.0));
  CHECK(g.degree(33) == doctest::Approx(17.0));
}

TEST_CASE("builtin two_triangles") {
  Graph g = builtin_graph("two_triangles");
  CHECK(g.num_nodes() == 6);
  CHECK(g.num_edges() == 7);
  CHECK(g.degree(2) == doctest::Approx(3.0));
}

TEST_CASE("builtin trapped_pair shape") {
  Graph g = builtin_graph(Builtin::TrappedPair);
  CHECK(g.num_nodes() == 9);
  CHECK(g.total_weight() == doctest::Approx(17.0));
  auto start = trapped_pair_start_assignment();
  REQUIRE(static_cast<int>(start.size()) == g.num_nodes());
  CHECK(start == std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1});
}

TEST_CASE("builtin name registry") {
  CHECK(is_builtin_name("karate"));
  CHECK(is_builtin_name("two_triangles"));
  CHECK(is_builtin_name("trapped_pair"));
  CHECK_FALSE(is_builtin_name("petersen"));
  CHECK_THROWS_AS(builtin_graph("petersen"), std::invalid_argument);
}

TEST_CASE("aggregate collapses clusters into supernodes") {
  Graph g = builtin_graph("two_triangles");
  Partition p(g, {0, 0, 0, 1, 1, 1});
  Aggregated agg = aggregate(g, p);

  CHECK(agg.graph.num_nodes() == 2);
  CHECK(agg.graph.total_weight() == doctest::Approx(g.total_weight()));
  CHECK(agg.graph.self_loop(0) == doctest::Approx(3.0));
  CHECK(agg.graph.self_loop(1) == doctest::Approx(3.0));
  auto nbrs = agg.graph.neighbors(0);
  REQUIRE(nbrs.size() == 1);
  CHECK(nbrs[0].node == 1);
  CHECK(nbrs[0].weight == doctest::Approx(1.0));
  CHECK(agg.node_map == std::vector<NodeId>{0, 0, 0, 1, 1, 1});
}

TEST_CASE("aggregate maps cluster ids by ascending rank") {
  Graph g = builtin_graph("two_triangles");
  // Cluster ids 4 and 2: supernode 0 must be the lower id (2).
  Partition p(g, {4, 4, 4, 2, 2, 2});
  Aggregated agg = aggregate(g, p);
  CHECK(agg.node_map == std::vector<NodeId>{1, 1, 1, 0, 0, 0});
}

TEST_CASE("aggregate preserves total weight on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    Graph g = testing::random_graph(rng, 25, 0.15, true, 0.2);
    auto assignment = testing::random_assignment(rng, g.num_nodes(), 5);
    Partition p(g, assignment);
    Aggregated agg = aggregate(g, p);
    CHECK(agg.graph.num_nodes() == p.num_clusters());
    CHECK(agg.graph.total_weight() == doctest::Approx(g.total_weight()).epsilon(1e-12));
    for (NodeId i = 0; i < g.num_nodes(); ++i)
      CHECK(agg.node_map[i] == agg.node_map[p.members(p.cluster_of(i)).front()]);
  }
}
