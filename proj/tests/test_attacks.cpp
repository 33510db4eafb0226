#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "peersplit/attacks.hpp"
#include "peersplit/formation.hpp"
#include "peersplit/graph.hpp"
#include "peersplit/mana.hpp"

using namespace peersplit;

namespace {

Graph path4() {
  Graph g(4);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  return g;
}

Graph barbell() {
  Graph g(6);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(1, 3);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  g.add_edge(4, 6);
  g.add_edge(3, 4);
  return g;
}

}  // namespace

TEST_CASE("link-removal attack on a four-node path, worked by hand") {
  // Mana 1, 1/2, 1/3, 1/4 of total 25/12. The middle link scores highest,
  // removing it leaves {1,2} vs {3,4}: damage 7/25, frontier {3}, cost 4/25.
  const auto dist = build_mana(4, 1.0, 1.0);
  const auto out = betweenness_attack(path4(), dist);
  CHECK(out.strategy == Strategy::betweenness);
  CHECK(out.success);
  CHECK(out.cut.links == std::vector<Edge>{{2, 3}});
  CHECK(out.cut.frontier == std::vector<std::size_t>{3});
  CHECK(out.damage == doctest::Approx(0.28).epsilon(1e-12));
  CHECK(out.cost == doctest::Approx(0.16).epsilon(1e-12));
  CHECK(out.efficiency == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(out.controlled == std::vector<std::size_t>{3});
  const std::vector<std::size_t> a = out.part_a, b = out.part_b;
  CHECK(a.size() + b.size() == 4);
}

TEST_CASE("prefix-scan attack on the same path prefers the richest split") {
  const auto dist = build_mana(4, 1.0, 1.0);
  const auto rows = greedy_scan(path4(), dist);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].efficiency == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rows[1].efficiency == doctest::Approx(1.75).epsilon(1e-12));
  CHECK(rows[2].efficiency == doctest::Approx(1.0).epsilon(1e-12));

  const auto out = greedy_attack(path4(), dist);
  CHECK(out.success);
  REQUIRE(out.target.has_value());
  CHECK(*out.target == 1);
  CHECK(out.damage == doctest::Approx(0.48).epsilon(1e-12));
  CHECK(out.cost == doctest::Approx(0.24).epsilon(1e-12));
  CHECK(out.efficiency == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(out.cut.links == std::vector<Edge>{{1, 2}});
  CHECK(out.cut.frontier == std::vector<std::size_t>{2});
}

TEST_CASE("a bridge between communities falls in one removal") {
  const auto dist = build_mana(6, 1.0, 1e10);
  const auto out = betweenness_attack(barbell(), dist);
  CHECK(out.success);
  CHECK(out.cut.links == std::vector<Edge>{{3, 4}});
  CHECK(out.cut.frontier == std::vector<std::size_t>{4});
  const double total = oracle::generalized_harmonic(6, 1.0);
  CHECK(out.cost == doctest::Approx((1.0 / 4.0) / total).epsilon(1e-12));
  const double light = (1.0 / 4 + 1.0 / 5 + 1.0 / 6) / total;
  CHECK(out.damage == doctest::Approx(light).epsilon(1e-12));
}

TEST_CASE("shared frontier endpoints are charged once") {
  Graph g(5);
  g.add_edge(1, 3);
  g.add_edge(2, 3);
  g.add_edge(1, 2);
  g.add_edge(4, 5);
  const auto dist = build_mana(5, 1.0, 1e10);
  Cut cut;
  cut.links = {{1, 3}, {2, 3}};
  const double cost = cut_cost(cut, dist);
  CHECK(cut.frontier == std::vector<std::size_t>{3});
  const double total = oracle::generalized_harmonic(5, 1.0);
  CHECK(cost == doctest::Approx((1.0 / 3.0) / total).epsilon(1e-12));
}

TEST_CASE("equal-mana frontier ties pick the larger rank") {
  const auto flat = build_mana(6, 0.0, 1e10);
  Cut cut;
  cut.links = {{2, 5}};
  const double cost = cut_cost(cut, flat);
  CHECK(cut.frontier == std::vector<std::size_t>{5});
  CHECK(cost == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("control windows clamp at the rank boundaries") {
  CHECK(blind_control_set(12, 7, 100) ==
        std::vector<std::size_t>{6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18});
  CHECK(blind_control_set(2, 3, 100) == std::vector<std::size_t>{1, 2, 3, 4});
  CHECK(blind_control_set(99, 5, 100) ==
        std::vector<std::size_t>{95, 96, 97, 98, 99, 100});
  CHECK(blind_control_set(1, 1, 100) == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(blind_control_set(0, 2, 100), std::out_of_range);
  CHECK_THROWS_AS(blind_control_set(101, 2, 100), std::out_of_range);
  CHECK_THROWS_AS(blind_control_set(5, 0, 100), std::invalid_argument);
}

TEST_CASE("blind window attacks on lattices match brute-force connectivity") {
  for (std::size_t k = 1; k <= 4; ++k) {
    const std::size_t n = 20;
    const Graph g = generate_lattice(n, k);
    const auto dist = build_mana(n, 1.0, 1e10);
    for (std::size_t l = 1; l <= 6; ++l) {
      for (std::size_t target = 1; target <= n; ++target) {
        const auto out = blind_attack(g, dist, target, l);
        const bool want = oracle::lattice_splits_after_window_removal(n, k, target, l);
        CHECK(out.success == want);
        // Interior windows split exactly when they outreach the lattice span.
        if (target > l && target + l <= n) {
          CHECK(want == (2 * l > k));
        }
        if (out.success) {
          CHECK(out.damage > 0.0);
          CHECK(out.efficiency == doctest::Approx(out.damage / out.cost));
        } else {
          CHECK(out.damage == 0.0);
          CHECK(out.efficiency == 0.0);
        }
        CHECK(out.cost ==
              doctest::Approx(mass_fraction(dist, blind_control_set(target, l, n)))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("blind damage and cost on the barbell, worked by hand") {
  const auto dist = build_mana(6, 1.0, 1e10);
  const auto out = blind_attack(barbell(), dist, 3, 1);
  CHECK(out.success);
  CHECK(out.controlled == std::vector<std::size_t>{3});
  const double total = oracle::generalized_harmonic(6, 1.0);
  CHECK(out.cost == doctest::Approx((1.0 / 3.0) / total).epsilon(1e-12));
  // Sides {1,2} and {4,5,6}; the trio is lighter.
  const double light = (1.0 / 4 + 1.0 / 5 + 1.0 / 6) / total;
  CHECK(out.damage == doctest::Approx(light).epsilon(1e-12));
  REQUIRE(out.target.has_value());
  CHECK(*out.target == 3);
}

TEST_CASE("exhaustive recomputation agrees with the prefix-scan attack") {
  FormationParams p;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    p.seed = seed;
    p.s = 0.5 + 0.02 * static_cast<double>(seed);
    const Graph g = generate_autopeering(p);
    const auto dist = build_mana(p.n, p.s, p.k_const);
    const auto out = greedy_attack(g, dist);
    const auto rows = oracle::greedy_rows_from_scratch(g, dist);
    const auto best = oracle::best_greedy_row(rows);
    REQUIRE(out.target.has_value());
    CHECK(*out.target == best.split);
    CHECK(out.efficiency == doctest::Approx(best.efficiency).epsilon(1e-9));
    CHECK(out.damage == doctest::Approx(best.damage).epsilon(1e-9));
    CHECK(out.cost == doctest::Approx(best.cost).epsilon(1e-9));
  }
}

TEST_CASE("damage never exceeds one half") {
  FormationParams p;
  for (std::uint64_t seed = 60; seed < 80; ++seed) {
    p.seed = seed;
    p.s = (seed % 2 == 0) ? 0.3 : 1.2;
    const Graph g = generate_autopeering(p);
    const auto dist = build_mana(p.n, p.s, p.k_const);
    CHECK(betweenness_attack(g, dist).damage <= 0.5);
    CHECK(greedy_attack(g, dist).damage <= 0.5);
    CHECK(blind_attack(g, dist, 12, 7).damage <= 0.5);
  }
}

TEST_CASE("normalized outcomes are invariant to the scale constant") {
  FormationParams p;
  p.seed = 21;
  const Graph g = generate_autopeering(p);
  const auto small = build_mana(p.n, p.s, 1.0);
  const auto big = build_mana(p.n, p.s, 1e10);
  const auto bt_small = betweenness_attack(g, small);
  const auto bt_big = betweenness_attack(g, big);
  CHECK(bt_small.cut.links == bt_big.cut.links);
  CHECK(bt_small.damage == doctest::Approx(bt_big.damage).epsilon(1e-12));
  CHECK(bt_small.cost == doctest::Approx(bt_big.cost).epsilon(1e-12));
  const auto gr_small = greedy_attack(g, small);
  const auto gr_big = greedy_attack(g, big);
  CHECK(*gr_small.target == *gr_big.target);
  CHECK(gr_small.efficiency == doctest::Approx(gr_big.efficiency).epsilon(1e-12));
}

TEST_CASE("attacking an already split network costs nothing") {
  Graph g(6);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(4, 5);
  g.add_edge(5, 6);
  const auto dist = build_mana(6, 1.0, 1e10);

  const auto bt = betweenness_attack(g, dist);
  CHECK(bt.success);
  CHECK(bt.cut.links.empty());
  CHECK(bt.cost == 0.0);
  CHECK(std::isinf(bt.efficiency));
  const double total = oracle::generalized_harmonic(6, 1.0);
  CHECK(bt.damage == doctest::Approx((1.0 / 4 + 1.0 / 5 + 1.0 / 6) / total));

  const auto gr = greedy_attack(g, dist);
  CHECK(gr.success);
  CHECK(gr.cost == 0.0);
  CHECK(std::isinf(gr.efficiency));
}
