#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "peersplit/formation.hpp"
#include "peersplit/graph.hpp"
#include "peersplit/mana.hpp"

using namespace peersplit;

namespace {

// Independent eligibility check: ratio window (strict) or rank window.
bool eligible(std::size_t i, std::size_t j, double s, double rho, std::size_t r) {
  if (i == j) return false;
  const long double mi = std::pow(static_cast<long double>(i), -s);
  const long double mj = std::pow(static_cast<long double>(j), -s);
  const bool by_mana = mi / rho < mj && mj < mi * rho;
  const std::size_t gap = i > j ? i - j : j - i;
  return by_mana || gap < r;
}

}  // namespace

TEST_CASE("candidate list for a mid-rank node at the reference point") {
  const auto dist = build_mana(100, 1.0, 1e10);
  const auto cands = potential_neighbors(10, dist, 4.0, 10);
  // Mana route: ranks in (10/4, 40); rank route: within 10 of rank 10.
  std::vector<std::size_t> want;
  for (std::size_t j = 1; j <= 39; ++j) {
    if (j != 10) want.push_back(j);
  }
  CHECK(cands == want);

  // The richest node: quarter-mana bound is strict, so rank 4 is out by mana
  // and only reachable through the rank window.
  const auto top = potential_neighbors(1, dist, 4.0, 10);
  CHECK(top == std::vector<std::size_t>{2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("every generated link is eligible and degrees respect the quota") {
  FormationParams p;
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    for (double rho : {1.5, 4.0}) {
      for (std::size_t n : {50ul, 100ul}) {
        p.n = n;
        p.s = s;
        p.rho = rho;
        p.r_window = 10;
        p.k_out = 4;
        p.seed = 17;
        const Graph g = generate_autopeering(p);
        CHECK(g.edge_count() <= n * p.k_out);
        for (std::size_t i = 1; i <= n; ++i) CHECK(g.degree(i) <= 2 * p.k_out);
        for (const auto& [a, b] : g.edges()) {
          CHECK(eligible(a, b, s, rho, p.r_window));
        }
      }
    }
  }
}

TEST_CASE("formation is deterministic per seed and sensitive to it") {
  FormationParams p;
  p.seed = 123;
  const std::string first = to_edge_list(generate_autopeering(p));
  const std::string second = to_edge_list(generate_autopeering(p));
  CHECK(first == second);

  p.seed = 124;
  CHECK(to_edge_list(generate_autopeering(p)) != first);
}

TEST_CASE("the scale constant never changes the topology") {
  FormationParams a;
  a.seed = 5;
  a.k_const = 1.0;
  FormationParams b = a;
  b.k_const = 1e10;
  CHECK(to_edge_list(generate_autopeering(a)) == to_edge_list(generate_autopeering(b)));
}

TEST_CASE("steep mana concentration collapses links onto the rank window") {
  FormationParams p;
  p.s = 6.0;
  p.rho = 1.5;
  p.r_window = 10;
  p.seed = 3;
  const Graph g = generate_autopeering(p);
  for (const auto& [a, b] : g.edges()) CHECK(b - a < 10);
}

TEST_CASE("default-parameter networks come out connected with few shortfalls") {
  FormationParams p;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    p.seed = seed;
    FormationStats stats;
    const Graph g = generate_autopeering(p, &stats);
    CHECK(components(g).size() == 1);
    CHECK(stats.shortfall_nodes <= 10);
  }
}

TEST_CASE("parameter validation") {
  FormationParams p;
  p.k_out = 0;
  CHECK_THROWS_AS(generate_autopeering(p), std::invalid_argument);
  p = {};
  p.n = 8;
  p.k_out = 4;
  CHECK_THROWS_AS(generate_autopeering(p), std::invalid_argument);
  p = {};
  p.rho = 1.0;
  CHECK_THROWS_AS(generate_autopeering(p), std::invalid_argument);
  p = {};
  p.r_window = 0;
  CHECK_THROWS_AS(generate_autopeering(p), std::invalid_argument);
  p = {};
  p.s = -0.5;
  CHECK_THROWS_AS(generate_autopeering(p), std::invalid_argument);
  p = {};
  p.k_const = 0.0;
  CHECK_THROWS_AS(generate_autopeering(p), std::invalid_argument);
}

TEST_CASE("path-type lattice wiring") {
  const Graph g = generate_lattice(10, 2);
  CHECK(g.edge_count() == 17);
  CHECK(g.degree(1) == 2);
  CHECK(g.degree(2) == 3);
  CHECK(g.degree(5) == 4);
  CHECK(g.degree(10) == 2);
  CHECK(g.has_edge(3, 4));
  CHECK(g.has_edge(3, 5));
  CHECK(!g.has_edge(3, 6));
  CHECK(components(g).size() == 1);

  // Reach must leave at least one node outside every window.
  CHECK_THROWS_AS(generate_lattice(5, 10), std::invalid_argument);
  CHECK_THROWS_AS(generate_lattice(10, 0), std::invalid_argument);
}

TEST_CASE("ring rewiring keeps the edge budget and per-node floor") {
  const std::size_t n = 40, k = 3;
  const Graph ring = generate_ws(n, k, 0.0, 1);
  CHECK(ring.edge_count() == n * k);
  for (std::size_t i = 1; i <= n; ++i) CHECK(ring.degree(i) == 2 * k);
  CHECK(ring.has_edge(1, 2));
  CHECK(ring.has_edge(1, 4));
  CHECK(ring.has_edge(38, 1));

  const Graph rewired = generate_ws(n, k, 1.0, 1);
  CHECK(rewired.edge_count() == n * k);
  // Rewiring moves the far endpoint only, so each node keeps its own k links.
  for (std::size_t i = 1; i <= n; ++i) CHECK(rewired.degree(i) >= k);
  CHECK(to_edge_list(rewired) != to_edge_list(ring));
  CHECK(to_edge_list(rewired) == to_edge_list(generate_ws(n, k, 1.0, 1)));
  CHECK(to_edge_list(rewired) != to_edge_list(generate_ws(n, k, 1.0, 2)));
}
