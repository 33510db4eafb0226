#include "peersplit/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "peersplit/betweenness.hpp"

namespace peersplit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Minimum-Mana endpoint of a link; equal endowments go to the larger rank,
// matching the s > 0 ordering in the s = 0 limit.
std::size_t frontier_node(Edge e, const ManaDistribution& dist) {
  const double mi = dist.value(e.first);
  const double mj = dist.value(e.second);
  if (mi < mj) return e.first;
  if (mj < mi) return e.second;
  return std::max(e.first, e.second);
}

double ratio_efficiency(double damage, double cost) {
  if (cost > 0.0) return damage / cost;
  return damage > 0.0 ? kInf : 0.0;
}

// Fills success/damage/parts from the surviving components (success already
// established, comps.size() >= 2): damage is all surviving mass outside the
// heaviest component, capped at 0.5; part_b gets the heavier of
// {heaviest component} vs {rest}.
void fill_split(AttackOutcome& o, const std::vector<std::vector<std::size_t>>& comps,
                const ManaDistribution& dist) {
  std::vector<double> fracs(comps.size());
  double surviving = 0.0;
  std::size_t heaviest = 0;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    fracs[c] = mass_fraction(dist, comps[c]);
    surviving += fracs[c];
    if (fracs[c] > fracs[heaviest]) heaviest = c;
  }
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (c == heaviest) continue;
    rest.insert(rest.end(), comps[c].begin(), comps[c].end());
  }
  std::sort(rest.begin(), rest.end());

  o.success = true;
  o.damage = std::min(0.5, surviving - fracs[heaviest]);
  if (surviving - fracs[heaviest] <= fracs[heaviest]) {
    o.part_a = std::move(rest);
    o.part_b = comps[heaviest];
  } else {
    o.part_a = comps[heaviest];
    o.part_b = std::move(rest);
  }
}

}  // namespace

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::betweenness: return "betweenness";
    case Strategy::greedy: return "greedy";
    case Strategy::blind: return "blind";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_name(const std::string& name) {
  if (name == "betweenness") return Strategy::betweenness;
  if (name == "greedy") return Strategy::greedy;
  if (name == "blind") return Strategy::blind;
  return std::nullopt;
}

double damage(const std::vector<std::size_t>& a, const ManaDistribution& dist) {
  const double f = mass_fraction(dist, a);
  return std::min(f, 1.0 - f);
}

double cut_cost(Cut& c, const ManaDistribution& dist) {
  std::vector<std::size_t> frontier;
  frontier.reserve(c.links.size());
  for (const Edge& e : c.links) frontier.push_back(frontier_node(e, dist));
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  c.frontier = std::move(frontier);
  return mass_fraction(dist, c.frontier);
}

AttackOutcome betweenness_attack(const Graph& g, const ManaDistribution& dist, int jobs) {
  AttackOutcome o;
  o.strategy = Strategy::betweenness;

  Graph work = g;
  auto comps = components(work);
  while (comps.size() == 1) {
    const auto scores = edge_betweenness(work, jobs);
    if (scores.empty()) break;  // single node left; nothing to split
    std::size_t best = 0;
    for (std::size_t e = 1; e < scores.size(); ++e) {
      if (scores[e].score > scores[best].score) best = e;
    }
    o.cut.links.push_back(scores[best].edge);
    work = remove_edge(work, scores[best].edge);
    comps = components(work);
  }
  std::sort(o.cut.links.begin(), o.cut.links.end());
  o.cost = cut_cost(o.cut, dist);
  o.controlled = o.cut.frontier;
  if (comps.size() >= 2) {
    fill_split(o, comps, dist);
  } else {
    o.success = false;
    o.damage = 0.0;
    if (!comps.empty()) o.part_b = comps.front();
  }
  o.efficiency = ratio_efficiency(o.damage, o.cost);
  return o;
}

std::vector<GreedyRow> greedy_scan(const Graph& g, const ManaDistribution& dist) {
  const std::size_t n = g.label_bound();
  const auto edges = g.edges();

  double mass_present = 0.0;
  for (std::size_t i : g.nodes()) mass_present += dist.value(i);

  std::vector<GreedyRow> rows;
  rows.reserve(n > 0 ? n - 1 : 0);
  double mass_a = 0.0;
  for (std::size_t split = 1; split + 1 <= n; ++split) {
    if (g.has_node(split)) mass_a += dist.value(split);
    Cut cut;
    for (const Edge& e : edges) {
      if (e.first <= split && e.second > split) cut.links.push_back(e);
    }
    GreedyRow row;
    row.i_star = split;
    row.cost = cut_cost(cut, dist);
    const double f_a = mass_a / dist.total;
    const double f_b = (mass_present - mass_a) / dist.total;
    row.damage = std::min(f_a, f_b);
    row.efficiency = ratio_efficiency(row.damage, row.cost);
    rows.push_back(row);
  }
  return rows;
}

AttackOutcome greedy_attack(const Graph& g, const ManaDistribution& dist) {
  AttackOutcome o;
  o.strategy = Strategy::greedy;

  const auto rows = greedy_scan(g, dist);
  const GreedyRow* best = nullptr;
  for (const auto& row : rows) {
    if (row.cost == 0.0 && row.damage == 0.0) continue;
    if (!best || row.efficiency > best->efficiency) best = &row;
  }
  if (!best) return o;  // no splittable row: empty side everywhere

  o.target = best->i_star;
  o.damage = best->damage;
  o.cost = best->cost;
  o.efficiency = best->efficiency;
  o.success = true;
  for (const Edge& e : g.edges()) {
    if (e.first <= best->i_star && e.second > best->i_star) o.cut.links.push_back(e);
  }
  cut_cost(o.cut, dist);
  o.controlled = o.cut.frontier;

  std::vector<std::size_t> side_a, side_b;
  for (std::size_t i : g.nodes()) {
    (i <= best->i_star ? side_a : side_b).push_back(i);
  }
  if (mass_fraction(dist, side_a) <= mass_fraction(dist, side_b)) {
    o.part_a = std::move(side_a);
    o.part_b = std::move(side_b);
  } else {
    o.part_a = std::move(side_b);
    o.part_b = std::move(side_a);
  }
  return o;
}

std::vector<std::size_t> blind_control_set(std::size_t target, std::size_t l, std::size_t n) {
  if (target < 1 || target > n) {
    throw std::out_of_range("blind_control_set: target outside 1..n");
  }
  if (l < 1) throw std::invalid_argument("blind_control_set: l must be >= 1");
  const std::size_t lo = target > l - 1 ? target - (l - 1) : 1;
  const std::size_t hi = std::min(n, target + (l - 1));
  std::vector<std::size_t> out;
  out.reserve(hi - lo + 1);
  for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

AttackOutcome blind_attack(const Graph& g, const ManaDistribution& dist, std::size_t target,
                           std::size_t l) {
  AttackOutcome o;
  o.strategy = Strategy::blind;
  o.target = target;
  o.controlled = blind_control_set(target, l, g.label_bound());
  o.cost = mass_fraction(dist, o.controlled);

  const Graph survived = remove_nodes(g, o.controlled);
  const auto comps = components(survived);
  if (comps.size() >= 2) {
    fill_split(o, comps, dist);
  } else {
    o.success = false;
    o.damage = 0.0;
    if (!comps.empty()) o.part_b = comps.front();
  }
  o.efficiency = ratio_efficiency(o.damage, o.cost);
  return o;
}

}  // namespace peersplit
