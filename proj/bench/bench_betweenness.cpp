#include <benchmark/benchmark.h>

#include "peersplit/betweenness.hpp"
#include "peersplit/experiments.hpp"
#include "peersplit/formation.hpp"

namespace {

peersplit::Graph make_graph(std::size_t n) {
  peersplit::FormationParams p;
  p.n = n;
  p.seed = 7;
  return peersplit::generate_autopeering(p);
}

void bm_edge_betweenness_serial(benchmark::State& state) {
  const auto g = make_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(peersplit::edge_betweenness_serial(g));
  }
}

void bm_edge_betweenness_parallel(benchmark::State& state) {
  const auto g = make_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(peersplit::edge_betweenness(g, 0));
  }
}

void bm_sweep_point(benchmark::State& state) {
  peersplit::SweepConfig cfg;
  peersplit::PointSpec pt;
  pt.point_id = "bench";
  pt.params.n = 100;
  cfg.points.push_back(pt);
  cfg.strategies = {peersplit::Strategy::betweenness};
  cfg.runs = 8;
  cfg.master_seed = 3;
  cfg.jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(peersplit::run_ensemble(cfg));
  }
}

}  // namespace

BENCHMARK(bm_edge_betweenness_serial)->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_edge_betweenness_parallel)->Arg(100)->Arg(200)->Arg(400)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(bm_sweep_point)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
