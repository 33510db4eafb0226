#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peersplit/attacks.hpp"
#include "peersplit/formation.hpp"
#include "peersplit/graph.hpp"

namespace peersplit {

enum class Model { autopeering, lattice, ws };

const char* model_name(Model m);
std::optional<Model> model_from_name(const std::string& name);

// One parameter point of a sweep: a formation model plus its parameters.
// params.seed is ignored; ensembles derive per-run seeds themselves.
struct PointSpec {
  std::string point_id;
  Model model = Model::autopeering;
  FormationParams params;
  double rewire_p = 1.0;  // ws only
};

// Generates the point's graph for one run.
Graph generate_point(const PointSpec& point, std::uint64_t seed);

// Blind-strategy settings for a sweep. Without a fixed target, each point's
// target is the frequency mode of the target_source strategy's frontier.
struct BlindSpec {
  std::optional<std::size_t> fixed_target;
  Strategy target_source = Strategy::betweenness;
  std::vector<std::size_t> l_grid;
};

struct SweepConfig {
  std::vector<PointSpec> points;
  std::vector<Strategy> strategies;
  std::size_t runs = 1000;
  std::uint64_t master_seed = 0;
  int jobs = 0;  // <= 0: all available threads
  std::optional<BlindSpec> blind;
};

// One attack on one generated graph.
struct RunRecord {
  std::string point_id;
  double s = 0.0;
  double rho = 0.0;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t k = 0;
  std::size_t run = 0;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::betweenness;
  std::optional<std::size_t> target;
  std::optional<std::size_t> l;
  bool success = false;
  double damage = 0.0;
  double cost = 0.0;
  double efficiency = 0.0;
  std::size_t frontier_size = 0;
};

// Aggregate over one (point, strategy[, L]) group. Efficiency statistics
// cover successful runs with finite efficiency only (NaN when there are
// none); p, mean_damage, and mean_cost cover all runs.
struct AggregateRow {
  std::string point_id;
  double s = 0.0;
  double rho = 0.0;
  Strategy strategy = Strategy::betweenness;
  std::optional<std::size_t> l;
  std::size_t runs = 0;
  double p = 0.0;
  double mean_eff = 0.0;
  double std_eff = 0.0;
  double ci95 = 0.0;
  double mean_damage = 0.0;
  double mean_cost = 0.0;
};

struct ResultsTable {
  std::vector<RunRecord> run_rows;
  std::vector<AggregateRow> aggregate_rows;
};

// Runs every configured strategy on `runs` graphs per point. Per-run seeds
// derive from (master_seed, point index, run index); blind ensembles are
// fresh per L, deriving from (master_seed, point index, L, run index). The
// result is byte-identical for every jobs value. Throws std::invalid_argument
// on an invalid config before any run starts.
ResultsTable run_ensemble(const SweepConfig& cfg);

AggregateRow aggregate_records(const std::vector<RunRecord>& records, std::size_t begin,
                               std::size_t end);

struct FrequencyHistogram {
  std::vector<std::size_t> counts;  // counts[rank - 1], rank 1..n
  std::size_t mode = 0;             // ties toward the smallest rank
};

// How often each rank lands in the frontier of the given full-information
// strategy, counted once per run. point_index selects the seed stream when
// the point is part of a larger campaign.
FrequencyHistogram frontier_frequencies(const PointSpec& point, Strategy strategy,
                                        std::size_t runs, std::uint64_t master_seed,
                                        int jobs = 0, std::size_t point_index = 0);

// Blind attacks on fresh ensembles for each L in l_grid, all against the
// same fixed target.
ResultsTable blind_sweep(const PointSpec& point, std::size_t target,
                         const std::vector<std::size_t>& l_grid, std::size_t runs,
                         std::uint64_t master_seed, int jobs = 0);

// Smallest L in 1..l_max whose fresh ensemble succeeds on every run;
// nullopt if none does.
std::optional<std::size_t> min_l_for_full_success(const PointSpec& point, std::size_t target,
                                                  std::size_t runs, std::size_t l_max,
                                                  std::uint64_t master_seed,
                                                  std::size_t point_index = 0);

enum class HeatmapMetric { efficiency, cost_at_full_success, efficiency_ratio, min_l };

const char* heatmap_metric_name(HeatmapMetric m);
std::optional<HeatmapMetric> heatmap_metric_from_name(const std::string& name);

struct HeatmapConfig {
  FormationParams base;  // s and rho are overridden per cell
  std::vector<double> s_grid;
  std::vector<double> rho_grid;
  std::size_t runs = 1000;
  Strategy strategy = Strategy::betweenness;  // full-information strategy the
                                              // metric is based on
  std::size_t l_max = 60;                     // search bound for blind metrics
  std::uint64_t master_seed = 0;
  int jobs = 0;
};

struct Heatmap {
  HeatmapMetric metric = HeatmapMetric::efficiency;
  Strategy strategy = Strategy::betweenness;
  std::vector<double> s_grid;
  std::vector<double> rho_grid;
  std::vector<std::vector<double>> cells;         // [s index][rho index]; NaN = undefined
  std::vector<std::vector<std::size_t>> targets;  // blind metrics: per-cell target rank
};

// Per-cell aggregates over the s x rho grid.
//   efficiency           mean D/x of cfg.strategy
//   efficiency_ratio     mean D/x betweenness over mean D/x greedy
//   min_l                smallest L splitting every run, blind target =
//                        frontier mode of cfg.strategy (NaN if > l_max)
//   cost_at_full_success control-set mass at that minimal L (NaN if none)
Heatmap heatmap(const HeatmapConfig& cfg, HeatmapMetric metric);

}  // namespace peersplit
