#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "peersplit/graph.hpp"
#include "peersplit/rng.hpp"

using namespace peersplit;

TEST_CASE("edges are canonical, deduplicated, and validated") {
  Graph g(5);
  CHECK(g.node_count() == 5);
  CHECK(g.label_bound() == 5);

  g.add_edge(3, 1);
  CHECK(g.has_edge(1, 3));
  CHECK(g.has_edge(3, 1));
  CHECK(g.edges() == std::vector<Edge>{{1, 3}});

  CHECK_THROWS_AS(g.add_edge(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 2), std::out_of_range);
  CHECK_THROWS_AS(g.add_edge(2, 6), std::out_of_range);
}

TEST_CASE("neighbors stay sorted and degrees track additions") {
  Graph g(6);
  g.add_edge(4, 2);
  g.add_edge(4, 6);
  g.add_edge(4, 1);
  g.add_edge(4, 3);
  CHECK(g.neighbors(4) == std::vector<std::size_t>{1, 2, 3, 6});
  CHECK(g.degree(4) == 4);
  CHECK(g.degree(5) == 0);
  CHECK(g.edge_count() == 4);
  CHECK(g.edges() == std::vector<Edge>{{1, 4}, {2, 4}, {3, 4}, {4, 6}});
}

TEST_CASE("components match a union-find oracle on random graphs") {
  Xoshiro256 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + rng.below(27);
    const double p = 0.05 + 0.25 * rng.uniform01();
    Graph g = oracle::random_graph(rng, n, p);
    CHECK(components(g) == oracle::components_via_union_find(g));
  }
}

TEST_CASE("removing an edge is value-semantic") {
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  const Graph h = remove_edge(g, {2, 3});
  CHECK(g.has_edge(2, 3));
  CHECK(!h.has_edge(2, 3));
  CHECK(h.has_edge(1, 2));
  CHECK(h.edge_count() == 1);
  CHECK_THROWS_AS(remove_edge(h, {2, 3}), std::invalid_argument);
}

TEST_CASE("removing nodes yields the induced subgraph with labels intact") {
  Graph g(6);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  g.add_edge(2, 5);

  const Graph h = remove_nodes(g, {2, 5});
  CHECK(h.node_count() == 4);
  CHECK(h.label_bound() == 6);
  CHECK(!h.has_node(2));
  CHECK(!h.has_node(5));
  CHECK(h.has_node(6));
  CHECK(h.edges() == std::vector<Edge>{{3, 4}});
  CHECK(components(h) ==
        std::vector<std::vector<std::size_t>>{{1}, {3, 4}, {6}});

  // Removing a node twice is a no-op the second time.
  const Graph h2 = remove_nodes(h, {2});
  CHECK(h2.node_count() == 4);
  CHECK_THROWS_AS(remove_nodes(g, {0}), std::out_of_range);
  CHECK_THROWS_AS(remove_nodes(g, {7}), std::out_of_range);
}

TEST_CASE("edge list serialization round-trips") {
  Xoshiro256 rng(11);
  Graph g = oracle::random_graph(rng, 17, 0.3);
  const std::string text = to_edge_list(g);
  const Graph back = from_edge_list(text);
  CHECK(back.label_bound() == 17);
  CHECK(back.edges() == g.edges());
  CHECK(to_edge_list(back) == text);

  const Graph empty = from_edge_list("# n=3\n");
  CHECK(empty.node_count() == 3);
  CHECK(empty.edge_count() == 0);
}

TEST_CASE("malformed edge lists are rejected") {
  CHECK_THROWS_AS(from_edge_list(""), std::invalid_argument);
  CHECK_THROWS_AS(from_edge_list("1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_edge_list("# n=zero\n1 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_edge_list("# n=4\n1 two\n"), std::invalid_argument);
  CHECK_THROWS_AS(from_edge_list("# n=4\n1 5\n"), std::out_of_range);
  CHECK_THROWS_AS(from_edge_list("# n=4\n1 2\n1 2\n"), std::invalid_argument);
}
