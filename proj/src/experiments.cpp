#include "peersplit/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "peersplit/betweenness.hpp"
#include "peersplit/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace peersplit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_point(const PointSpec& pt) {
  validate(pt.params);
  if (pt.model == Model::ws && !(pt.rewire_p >= 0.0 && pt.rewire_p <= 1.0)) {
    throw std::invalid_argument("sweep: rewire_p must be in [0,1]");
  }
  if (pt.point_id.find(',') != std::string::npos ||
      pt.point_id.find('\n') != std::string::npos) {
    throw std::invalid_argument("sweep: point_id must not contain ',' or newlines");
  }
}

void validate_config(const SweepConfig& cfg) {
  if (cfg.points.empty()) throw std::invalid_argument("sweep: no parameter points");
  if (cfg.strategies.empty()) throw std::invalid_argument("sweep: no strategies");
  if (cfg.runs < 1) throw std::invalid_argument("sweep: runs must be >= 1");
  for (const auto& pt : cfg.points) validate_point(pt);
  const bool wants_blind =
      std::find(cfg.strategies.begin(), cfg.strategies.end(), Strategy::blind) !=
      cfg.strategies.end();
  if (wants_blind) {
    if (!cfg.blind) throw std::invalid_argument("sweep: blind strategy needs blind settings");
    if (cfg.blind->l_grid.empty()) throw std::invalid_argument("sweep: empty l_grid");
    if (cfg.blind->target_source == Strategy::blind) {
      throw std::invalid_argument("sweep: blind target source must be a full-information strategy");
    }
    for (const auto& pt : cfg.points) {
      for (std::size_t l : cfg.blind->l_grid) {
        if (l < 1) throw std::invalid_argument("sweep: l values must be >= 1");
        if (l > pt.params.n) throw std::invalid_argument("sweep: l exceeds n");
      }
      if (cfg.blind->fixed_target &&
          (*cfg.blind->fixed_target < 1 || *cfg.blind->fixed_target > pt.params.n)) {
        throw std::invalid_argument("sweep: blind target outside 1..n");
      }
    }
  }
}

RunRecord base_record(const PointSpec& pt, std::size_t run, std::uint64_t seed) {
  RunRecord rec;
  rec.point_id = pt.point_id;
  rec.s = pt.params.s;
  rec.rho = pt.params.rho;
  rec.n = pt.params.n;
  rec.r = pt.params.r_window;
  rec.k = pt.params.k_out;
  rec.run = run;
  rec.seed = seed;
  return rec;
}

void fill_outcome(RunRecord& rec, const AttackOutcome& o) {
  rec.strategy = o.strategy;
  rec.target = o.target;
  rec.success = o.success;
  rec.damage = o.damage;
  rec.cost = o.cost;
  rec.efficiency = o.efficiency;
  rec.frontier_size = o.controlled.size();
}

AttackOutcome run_full_info(const Graph& g, const ManaDistribution& dist, Strategy strategy) {
  // Attacks stay single-threaded here; the ensemble layer owns parallelism.
  if (strategy == Strategy::betweenness) return betweenness_attack(g, dist, 1);
  return greedy_attack(g, dist);
}

// Internal counterpart of frontier_frequencies; see header for the contract.
FrequencyHistogram frequencies_impl(const PointSpec& pt, Strategy strategy, std::size_t runs,
                                    std::uint64_t master_seed, int jobs,
                                    std::size_t point_index) {
  if (strategy == Strategy::blind) {
    throw std::invalid_argument("frontier_frequencies: strategy must be full-information");
  }
  validate_point(pt);
  if (runs < 1) throw std::invalid_argument("frontier_frequencies: runs must be >= 1");

  std::vector<std::vector<std::size_t>> frontiers(runs);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(jobs > 0 ? jobs : omp_get_max_threads())
#endif
  for (std::size_t run = 0; run < runs; ++run) {
    const std::uint64_t seed = derive_seed(master_seed, point_index, run);
    const Graph g = generate_point(pt, seed);
    const ManaDistribution dist = build_mana(pt.params.n, pt.params.s, pt.params.k_const);
    frontiers[run] = run_full_info(g, dist, strategy).controlled;
  }

  FrequencyHistogram hist;
  hist.counts.assign(pt.params.n, 0);
  for (const auto& frontier : frontiers) {
    for (std::size_t rank : frontier) ++hist.counts[rank - 1];
  }
  hist.mode = 1;
  for (std::size_t rank = 2; rank <= pt.params.n; ++rank) {
    if (hist.counts[rank - 1] > hist.counts[hist.mode - 1]) hist.mode = rank;
  }
  return hist;
}

}  // namespace

const char* model_name(Model m) {
  switch (m) {
    case Model::autopeering: return "autopeering";
    case Model::lattice: return "lattice";
    case Model::ws: return "ws";
  }
  return "unknown";
}

std::optional<Model> model_from_name(const std::string& name) {
  if (name == "autopeering") return Model::autopeering;
  if (name == "lattice") return Model::lattice;
  if (name == "ws") return Model::ws;
  return std::nullopt;
}

Graph generate_point(const PointSpec& point, std::uint64_t seed) {
  switch (point.model) {
    case Model::autopeering: {
      FormationParams p = point.params;
      p.seed = seed;
      return generate_autopeering(p);
    }
    case Model::lattice:
      return generate_lattice(point.params.n, point.params.k_out);
    case Model::ws:
      return generate_ws(point.params.n, point.params.k_out, point.rewire_p, seed);
  }
  throw std::invalid_argument("generate_point: unknown model");
}

AggregateRow aggregate_records(const std::vector<RunRecord>& records, std::size_t begin,
                               std::size_t end) {
  if (begin >= end || end > records.size()) {
    throw std::invalid_argument("aggregate_records: empty or invalid range");
  }
  AggregateRow row;
  const RunRecord& first = records[begin];
  row.point_id = first.point_id;
  row.s = first.s;
  row.rho = first.rho;
  row.strategy = first.strategy;
  row.l = first.l;
  row.runs = end - begin;

  std::size_t successes = 0;
  std::size_t used = 0;
  double eff_sum = 0.0;
  double damage_sum = 0.0;
  double cost_sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const RunRecord& rec = records[i];
    damage_sum += rec.damage;
    cost_sum += rec.cost;
    if (rec.success) ++successes;
    if (rec.success && std::isfinite(rec.efficiency)) {
      ++used;
      eff_sum += rec.efficiency;
    }
  }
  row.p = static_cast<double>(successes) / static_cast<double>(row.runs);
  row.mean_damage = damage_sum / static_cast<double>(row.runs);
  row.mean_cost = cost_sum / static_cast<double>(row.runs);
  if (used == 0) {
    row.mean_eff = kNaN;
    row.std_eff = kNaN;
    row.ci95 = kNaN;
    return row;
  }
  row.mean_eff = eff_sum / static_cast<double>(used);
  double sq = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    const RunRecord& rec = records[i];
    if (rec.success && std::isfinite(rec.efficiency)) {
      const double d = rec.efficiency - row.mean_eff;
      sq += d * d;
    }
  }
  row.std_eff = used >= 2 ? std::sqrt(sq / static_cast<double>(used - 1)) : 0.0;
  row.ci95 = 1.96 * row.std_eff / std::sqrt(static_cast<double>(used));
  return row;
}

ResultsTable run_ensemble(const SweepConfig& cfg) {
  validate_config(cfg);

  std::vector<Strategy> full_info;
  for (Strategy s : cfg.strategies) {
    if (s != Strategy::blind) full_info.push_back(s);
  }
  const bool wants_blind =
      std::find(cfg.strategies.begin(), cfg.strategies.end(), Strategy::blind) !=
      cfg.strategies.end();

  ResultsTable table;
  for (std::size_t pi = 0; pi < cfg.points.size(); ++pi) {
    const PointSpec& pt = cfg.points[pi];
    const ManaDistribution dist = build_mana(pt.params.n, pt.params.s, pt.params.k_const);

    if (!full_info.empty()) {
      std::vector<RunRecord> block(cfg.runs * full_info.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) \
    num_threads(cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads())
#endif
      for (std::size_t run = 0; run < cfg.runs; ++run) {
        const std::uint64_t seed = derive_seed(cfg.master_seed, pi, run);
        const Graph g = generate_point(pt, seed);
        for (std::size_t si = 0; si < full_info.size(); ++si) {
          RunRecord rec = base_record(pt, run, seed);
          fill_outcome(rec, run_full_info(g, dist, full_info[si]));
          block[run * full_info.size() + si] = std::move(rec);
        }
      }
      const std::size_t base = table.run_rows.size();
      table.run_rows.insert(table.run_rows.end(), std::make_move_iterator(block.begin()),
                            std::make_move_iterator(block.end()));
      for (std::size_t si = 0; si < full_info.size(); ++si) {
        // Regroup per strategy for aggregation: rows are run-major.
        std::vector<RunRecord> group;
        group.reserve(cfg.runs);
        for (std::size_t run = 0; run < cfg.runs; ++run) {
          group.push_back(table.run_rows[base + run * full_info.size() + si]);
        }
        table.aggregate_rows.push_back(aggregate_records(group, 0, group.size()));
      }
    }

    if (wants_blind) {
      const std::size_t target =
          cfg.blind->fixed_target
              ? *cfg.blind->fixed_target
              : frequencies_impl(pt, cfg.blind->target_source, cfg.runs, cfg.master_seed,
                                 cfg.jobs, pi)
                    .mode;
      for (std::size_t l : cfg.blind->l_grid) {
        std::vector<RunRecord> block(cfg.runs);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) \
    num_threads(cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads())
#endif
        for (std::size_t run = 0; run < cfg.runs; ++run) {
          const std::uint64_t seed = derive_seed(cfg.master_seed, pi, l, run);
          const Graph g = generate_point(pt, seed);
          RunRecord rec = base_record(pt, run, seed);
          rec.l = l;
          fill_outcome(rec, blind_attack(g, dist, target, l));
          block[run] = std::move(rec);
        }
        const std::size_t begin = table.run_rows.size();
        table.run_rows.insert(table.run_rows.end(), std::make_move_iterator(block.begin()),
                              std::make_move_iterator(block.end()));
        table.aggregate_rows.push_back(
            aggregate_records(table.run_rows, begin, table.run_rows.size()));
      }
    }
  }
  return table;
}

FrequencyHistogram frontier_frequencies(const PointSpec& point, Strategy strategy,
                                        std::size_t runs, std::uint64_t master_seed, int jobs,
                                        std::size_t point_index) {
  return frequencies_impl(point, strategy, runs, master_seed, jobs, point_index);
}

ResultsTable blind_sweep(const PointSpec& point, std::size_t target,
                         const std::vector<std::size_t>& l_grid, std::size_t runs,
                         std::uint64_t master_seed, int jobs) {
  SweepConfig cfg;
  cfg.points = {point};
  cfg.strategies = {Strategy::blind};
  cfg.runs = runs;
  cfg.master_seed = master_seed;
  cfg.jobs = jobs;
  cfg.blind = BlindSpec{target, Strategy::betweenness, l_grid};
  return run_ensemble(cfg);
}

std::optional<std::size_t> min_l_for_full_success(const PointSpec& point, std::size_t target,
                                                  std::size_t runs, std::size_t l_max,
                                                  std::uint64_t master_seed,
                                                  std::size_t point_index) {
  validate_point(point);
  if (runs < 1) throw std::invalid_argument("min_l: runs must be >= 1");
  if (l_max < 1 || l_max > point.params.n) {
    throw std::invalid_argument("min_l: l_max must be in 1..n");
  }
  if (target < 1 || target > point.params.n) {
    throw std::invalid_argument("min_l: target outside 1..n");
  }
  const ManaDistribution dist =
      build_mana(point.params.n, point.params.s, point.params.k_const);
  for (std::size_t l = 1; l <= l_max; ++l) {
    bool all = true;
    for (std::size_t run = 0; run < runs && all; ++run) {
      const std::uint64_t seed = derive_seed(master_seed, point_index, l, run);
      const Graph g = generate_point(point, seed);
      all = blind_attack(g, dist, target, l).success;
    }
    if (all) return l;
  }
  return std::nullopt;
}

const char* heatmap_metric_name(HeatmapMetric m) {
  switch (m) {
    case HeatmapMetric::efficiency: return "efficiency";
    case HeatmapMetric::cost_at_full_success: return "cost_at_full_success";
    case HeatmapMetric::efficiency_ratio: return "efficiency_ratio";
    case HeatmapMetric::min_l: return "min_l";
  }
  return "unknown";
}

std::optional<HeatmapMetric> heatmap_metric_from_name(const std::string& name) {
  if (name == "efficiency") return HeatmapMetric::efficiency;
  if (name == "cost_at_full_success") return HeatmapMetric::cost_at_full_success;
  if (name == "efficiency_ratio") return HeatmapMetric::efficiency_ratio;
  if (name == "min_l") return HeatmapMetric::min_l;
  return std::nullopt;
}

Heatmap heatmap(const HeatmapConfig& cfg, HeatmapMetric metric) {
  if (cfg.s_grid.empty() || cfg.rho_grid.empty()) {
    throw std::invalid_argument("heatmap: empty grid");
  }
  if (cfg.strategy == Strategy::blind) {
    throw std::invalid_argument("heatmap: strategy must be full-information");
  }

  auto cell_point = [&](double s, double rho) {
    PointSpec pt;
    pt.model = Model::autopeering;
    pt.params = cfg.base;
    pt.params.s = s;
    pt.params.rho = rho;
    pt.point_id = "cell";
    return pt;
  };

  Heatmap out;
  out.metric = metric;
  out.strategy = cfg.strategy;
  out.s_grid = cfg.s_grid;
  out.rho_grid = cfg.rho_grid;
  out.cells.assign(cfg.s_grid.size(), std::vector<double>(cfg.rho_grid.size(), kNaN));
  out.targets.assign(cfg.s_grid.size(), std::vector<std::size_t>(cfg.rho_grid.size(), 0));

  if (metric == HeatmapMetric::efficiency || metric == HeatmapMetric::efficiency_ratio) {
    SweepConfig sweep;
    sweep.runs = cfg.runs;
    sweep.master_seed = cfg.master_seed;
    sweep.jobs = cfg.jobs;
    sweep.strategies = metric == HeatmapMetric::efficiency
                           ? std::vector<Strategy>{cfg.strategy}
                           : std::vector<Strategy>{Strategy::betweenness, Strategy::greedy};
    for (double s : cfg.s_grid) {
      for (double rho : cfg.rho_grid) {
        sweep.points.push_back(cell_point(s, rho));
      }
    }
    const ResultsTable table = run_ensemble(sweep);
    const std::size_t per_cell = sweep.strategies.size();
    for (std::size_t si = 0; si < cfg.s_grid.size(); ++si) {
      for (std::size_t ri = 0; ri < cfg.rho_grid.size(); ++ri) {
        const std::size_t ci = si * cfg.rho_grid.size() + ri;
        if (metric == HeatmapMetric::efficiency) {
          out.cells[si][ri] = table.aggregate_rows[ci].mean_eff;
        } else {
          const double bt = table.aggregate_rows[ci * per_cell].mean_eff;
          const double gr = table.aggregate_rows[ci * per_cell + 1].mean_eff;
          out.cells[si][ri] = bt / gr;
        }
      }
    }
    return out;
  }

  // Blind metrics: per cell, target the frontier mode of the full-information
  // strategy, then search for the smallest fully successful L.
  for (std::size_t si = 0; si < cfg.s_grid.size(); ++si) {
    for (std::size_t ri = 0; ri < cfg.rho_grid.size(); ++ri) {
      const std::size_t ci = si * cfg.rho_grid.size() + ri;
      const PointSpec pt = cell_point(cfg.s_grid[si], cfg.rho_grid[ri]);
      const std::size_t target =
          frequencies_impl(pt, cfg.strategy, cfg.runs, cfg.master_seed, cfg.jobs, ci).mode;
      out.targets[si][ri] = target;
      const auto min_l =
          min_l_for_full_success(pt, target, cfg.runs, cfg.l_max, cfg.master_seed, ci);
      if (!min_l) continue;
      if (metric == HeatmapMetric::min_l) {
        out.cells[si][ri] = static_cast<double>(*min_l);
      } else {
        const ManaDistribution dist =
            build_mana(pt.params.n, pt.params.s, pt.params.k_const);
        out.cells[si][ri] =
            mass_fraction(dist, blind_control_set(target, *min_l, pt.params.n));
      }
    }
  }
  return out;
}

}  // namespace peersplit
