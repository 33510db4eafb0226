#include <doctest.h>

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "peersplit/attacks.hpp"
#include "peersplit/experiments.hpp"
#include "peersplit/formation.hpp"
#include "peersplit/mana.hpp"
#include "peersplit/rng.hpp"

using namespace peersplit;

namespace {

PointSpec autop_point(std::string id, double s = 1.0, double rho = 4.0) {
  PointSpec pt;
  pt.point_id = std::move(id);
  pt.model = Model::autopeering;
  pt.params.s = s;
  pt.params.rho = rho;
  return pt;
}

PointSpec lattice_point(std::string id, std::size_t n, std::size_t k) {
  PointSpec pt;
  pt.point_id = std::move(id);
  pt.model = Model::lattice;
  pt.params.n = n;
  pt.params.k_out = k;
  return pt;
}

bool same_rows(const std::vector<RunRecord>& a, const std::vector<RunRecord>& b) {
  if (a.size() != b.size()) return false;
  auto same_double = [](double x, double y) {
    return (std::isnan(x) && std::isnan(y)) || x == y;
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].point_id != b[i].point_id || a[i].run != b[i].run ||
        a[i].seed != b[i].seed || a[i].strategy != b[i].strategy ||
        a[i].target != b[i].target || a[i].l != b[i].l ||
        a[i].success != b[i].success || !same_double(a[i].damage, b[i].damage) ||
        !same_double(a[i].cost, b[i].cost) ||
        !same_double(a[i].efficiency, b[i].efficiency) ||
        a[i].frontier_size != b[i].frontier_size) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("ensembles are deterministic and independent of worker count") {
  SweepConfig cfg;
  cfg.points = {autop_point("a", 0.8), autop_point("b", 1.1)};
  cfg.strategies = {Strategy::betweenness, Strategy::greedy};
  cfg.runs = 8;
  cfg.master_seed = 42;

  cfg.jobs = 1;
  const ResultsTable one = run_ensemble(cfg);
  cfg.jobs = 3;
  const ResultsTable three = run_ensemble(cfg);
  cfg.jobs = 0;
  const ResultsTable any = run_ensemble(cfg);
  CHECK(same_rows(one.run_rows, three.run_rows));
  CHECK(same_rows(one.run_rows, any.run_rows));
  REQUIRE(one.aggregate_rows.size() == three.aggregate_rows.size());
  for (std::size_t i = 0; i < one.aggregate_rows.size(); ++i) {
    CHECK(one.aggregate_rows[i].mean_eff == three.aggregate_rows[i].mean_eff);
    CHECK(one.aggregate_rows[i].ci95 == three.aggregate_rows[i].ci95);
  }
}

TEST_CASE("run rows carry the derived seed chain and full parameter echo") {
  SweepConfig cfg;
  cfg.points = {autop_point("first", 0.9, 3.0), autop_point("second", 1.0, 4.0)};
  cfg.strategies = {Strategy::greedy};
  cfg.runs = 5;
  cfg.master_seed = 99;
  const ResultsTable table = run_ensemble(cfg);
  REQUIRE(table.run_rows.size() == 10);

  std::set<std::uint64_t> seeds;
  for (const auto& row : table.run_rows) {
    const std::size_t point_index = row.point_id == "first" ? 0 : 1;
    CHECK(row.seed == derive_seed(99, point_index, row.run));
    CHECK(row.n == 100);
    CHECK(row.r == 10);
    CHECK(row.k == 4);
    CHECK(row.s == (point_index == 0 ? 0.9 : 1.0));
    CHECK(row.rho == (point_index == 0 ? 3.0 : 4.0));
    seeds.insert(row.seed);
  }
  CHECK(seeds.size() == 10);

  // Replaying a row's seed reproduces its outcome exactly.
  const auto& row = table.run_rows[3];
  FormationParams p;
  p.s = row.s;
  p.rho = row.rho;
  p.seed = row.seed;
  const Graph g = generate_autopeering(p);
  const auto dist = build_mana(p.n, p.s, p.k_const);
  const auto replay = greedy_attack(g, dist);
  CHECK(replay.damage == row.damage);
  CHECK(replay.cost == row.cost);
  CHECK(replay.efficiency == row.efficiency);
}

TEST_CASE("aggregates recompute from the run rows") {
  SweepConfig cfg;
  cfg.points = {autop_point("pt", 1.0)};
  cfg.strategies = {Strategy::betweenness, Strategy::greedy};
  cfg.runs = 25;
  cfg.master_seed = 7;
  const ResultsTable table = run_ensemble(cfg);

  for (const auto& agg : table.aggregate_rows) {
    std::size_t successes = 0;
    double dmg = 0.0, cost = 0.0, eff = 0.0;
    std::size_t eff_n = 0;
    for (const auto& row : table.run_rows) {
      if (row.strategy != agg.strategy) continue;
      successes += row.success ? 1 : 0;
      dmg += row.damage;
      cost += row.cost;
      if (row.success && std::isfinite(row.efficiency)) {
        eff += row.efficiency;
        ++eff_n;
      }
    }
    CHECK(agg.runs == 25);
    CHECK(agg.p == doctest::Approx(double(successes) / 25).epsilon(1e-15));
    CHECK(agg.mean_damage == doctest::Approx(dmg / 25).epsilon(1e-12));
    CHECK(agg.mean_cost == doctest::Approx(cost / 25).epsilon(1e-12));
    REQUIRE(eff_n > 0);
    const double mean = eff / double(eff_n);
    CHECK(agg.mean_eff == doctest::Approx(mean).epsilon(1e-12));

    double var = 0.0;
    for (const auto& row : table.run_rows) {
      if (row.strategy == agg.strategy && row.success && std::isfinite(row.efficiency)) {
        var += (row.efficiency - mean) * (row.efficiency - mean);
      }
    }
    const double sd = eff_n > 1 ? std::sqrt(var / double(eff_n - 1)) : 0.0;
    CHECK(agg.std_eff == doctest::Approx(sd).epsilon(1e-9));
    CHECK(agg.ci95 == doctest::Approx(1.96 * sd / std::sqrt(double(eff_n))).epsilon(1e-9));
  }
}

TEST_CASE("single-run ensembles have zero spread") {
  SweepConfig cfg;
  cfg.points = {autop_point("pt")};
  cfg.strategies = {Strategy::greedy};
  cfg.runs = 1;
  const ResultsTable table = run_ensemble(cfg);
  REQUIRE(table.aggregate_rows.size() == 1);
  CHECK(table.aggregate_rows[0].std_eff == 0.0);
  CHECK(table.aggregate_rows[0].ci95 == 0.0);
}

TEST_CASE("window attacks on a lattice produce step-function success") {
  // k=2 lattice: a window splits the path exactly when 2L > k, so L=1 never
  // works and L=2 always does.
  SweepConfig cfg;
  cfg.points = {lattice_point("lat", 20, 2)};
  cfg.strategies = {Strategy::blind};
  cfg.runs = 6;
  BlindSpec blind;
  blind.fixed_target = 10;
  blind.l_grid = {1, 2};
  cfg.blind = blind;
  const ResultsTable table = run_ensemble(cfg);

  REQUIRE(table.aggregate_rows.size() == 2);
  CHECK(table.aggregate_rows[0].l == 1);
  CHECK(table.aggregate_rows[0].p == 0.0);
  CHECK(std::isnan(table.aggregate_rows[0].mean_eff));
  CHECK(table.aggregate_rows[1].l == 2);
  CHECK(table.aggregate_rows[1].p == 1.0);
  const auto dist = build_mana(20, 1.0, 1e10);
  CHECK(table.aggregate_rows[1].mean_cost ==
        doctest::Approx(mass_fraction(dist, {9, 10, 11})).epsilon(1e-12));

  for (const auto& row : table.run_rows) {
    REQUIRE(row.l.has_value());
    REQUIRE(row.target.has_value());
    CHECK(*row.target == 10);
    CHECK(row.frontier_size == blind_control_set(10, *row.l, 20).size());
  }
}

TEST_CASE("the same L value reuses the same networks across entry points") {
  const PointSpec pt = autop_point("pt");
  const ResultsTable a = blind_sweep(pt, 12, {5, 7}, 10, 1, 0);
  const ResultsTable b = blind_sweep(pt, 14, {7}, 10, 1, 0);
  std::vector<std::uint64_t> seeds_a, seeds_b;
  for (const auto& row : a.run_rows) {
    if (*row.l == 7) seeds_a.push_back(row.seed);
  }
  for (const auto& row : b.run_rows) seeds_b.push_back(row.seed);
  CHECK(seeds_a == seeds_b);
}

TEST_CASE("frontier frequency histograms count each run once per rank") {
  const PointSpec pt = lattice_point("lat", 20, 2);
  const auto hist = frontier_frequencies(pt, Strategy::greedy, 12, 5);
  REQUIRE(hist.counts.size() == 20);

  // Every run sees the identical lattice, so counts are 12 at the frontier
  // ranks of a single greedy attack and 0 elsewhere.
  const Graph g = generate_lattice(20, 2);
  const auto dist = build_mana(20, 1.0, 1e10);
  const auto out = greedy_attack(g, dist);
  std::size_t nonzero = 0;
  for (std::size_t rank = 1; rank <= 20; ++rank) {
    const bool in_frontier =
        std::find(out.cut.frontier.begin(), out.cut.frontier.end(), rank) !=
        out.cut.frontier.end();
    CHECK(hist.counts[rank - 1] == (in_frontier ? 12u : 0u));
    nonzero += in_frontier;
  }
  REQUIRE(nonzero > 0);
  CHECK(hist.mode == out.cut.frontier.front());

  CHECK_THROWS_AS(frontier_frequencies(pt, Strategy::blind, 5, 1), std::invalid_argument);
}

TEST_CASE("smallest fully successful window on a deterministic lattice") {
  const PointSpec pt = lattice_point("lat", 20, 2);
  const auto min_l = min_l_for_full_success(pt, 10, 8, 6, 3);
  REQUIRE(min_l.has_value());
  CHECK(*min_l == 2);
  CHECK(!min_l_for_full_success(pt, 10, 8, 1, 3).has_value());
}

TEST_CASE("heatmap cells line up with standalone ensembles") {
  HeatmapConfig cfg;
  cfg.s_grid = {0.8, 1.2};
  cfg.rho_grid = {2.0, 4.0};
  cfg.runs = 6;
  cfg.strategy = Strategy::greedy;
  cfg.master_seed = 11;
  const Heatmap hm = heatmap(cfg, HeatmapMetric::efficiency);
  REQUIRE(hm.cells.size() == 2);
  REQUIRE(hm.cells[0].size() == 2);

  SweepConfig sweep;
  sweep.strategies = {Strategy::greedy};
  sweep.runs = 6;
  sweep.master_seed = 11;
  for (double s : cfg.s_grid) {
    for (double rho : cfg.rho_grid) {
      PointSpec pt = autop_point("cell", s, rho);
      pt.point_id += "_" + std::to_string(sweep.points.size());
      sweep.points.push_back(pt);
    }
  }
  const ResultsTable table = run_ensemble(sweep);
  REQUIRE(table.aggregate_rows.size() == 4);
  CHECK(hm.cells[0][0] == table.aggregate_rows[0].mean_eff);
  CHECK(hm.cells[0][1] == table.aggregate_rows[1].mean_eff);
  CHECK(hm.cells[1][0] == table.aggregate_rows[2].mean_eff);
  CHECK(hm.cells[1][1] == table.aggregate_rows[3].mean_eff);
}

TEST_CASE("blind heatmap metrics derive target, window, and cost per cell") {
  HeatmapConfig cfg;
  cfg.s_grid = {1.0};
  cfg.rho_grid = {4.0};
  cfg.runs = 15;
  cfg.strategy = Strategy::betweenness;
  cfg.l_max = 30;
  cfg.master_seed = 5;
  const Heatmap hm = heatmap(cfg, HeatmapMetric::cost_at_full_success);
  REQUIRE(hm.targets.size() == 1);
  const std::size_t target = hm.targets[0][0];
  REQUIRE(target >= 1);

  PointSpec pt = autop_point("cell");
  pt.point_id = "cell_0";
  const auto hist = frontier_frequencies(pt, Strategy::betweenness, 15, 5, 0, 0);
  CHECK(target == hist.mode);

  const auto min_l = min_l_for_full_success(pt, target, 15, 30, 5, 0);
  REQUIRE(min_l.has_value());
  const auto dist = build_mana(100, 1.0, 1e10);
  CHECK(hm.cells[0][0] ==
        doctest::Approx(mass_fraction(dist, blind_control_set(target, *min_l, 100)))
            .epsilon(1e-12));

  const Heatmap ml = heatmap(cfg, HeatmapMetric::min_l);
  CHECK(ml.cells[0][0] == doctest::Approx(double(*min_l)));
}

TEST_CASE("configuration mistakes are rejected before any run") {
  SweepConfig cfg;
  cfg.strategies = {Strategy::greedy};
  cfg.runs = 4;
  CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);  // no points

  cfg.points = {autop_point("bad,id")};
  CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);

  cfg.points = {autop_point("ok")};
  cfg.runs = 0;
  CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);
  cfg.runs = 4;

  cfg.strategies = {Strategy::blind};
  CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);  // no blind settings

  BlindSpec blind;
  blind.fixed_target = 5;
  blind.l_grid = {200};
  cfg.blind = blind;
  CHECK_THROWS_AS(run_ensemble(cfg), std::invalid_argument);  // l beyond n
}
