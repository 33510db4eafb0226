#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "peersplit/graph.hpp"
#include "peersplit/mana.hpp"

namespace peersplit {

enum class Strategy { betweenness, greedy, blind };

const char* strategy_name(Strategy s);
std::optional<Strategy> strategy_from_name(const std::string& name);

// A set of removed links plus the frontier: the deduplicated minimum-Mana
// endpoint of each link, i.e. the nodes an attacker must control to own the
// cut.
struct Cut {
  std::vector<Edge> links;            // canonical, lexicographic
  std::vector<std::size_t> frontier;  // sorted ranks
};

struct AttackOutcome {
  Strategy strategy = Strategy::betweenness;
  bool success = false;
  std::vector<std::size_t> part_a;     // mass(part_a) <= mass(part_b)
  std::vector<std::size_t> part_b;
  std::vector<std::size_t> controlled; // frontier, or the blind control set
  double damage = 0.0;                 // in [0, 0.5]
  double cost = 0.0;                   // controlled mass / total mass
  double efficiency = 0.0;             // damage/cost; +inf when cost=0, damage>0
  std::optional<std::size_t> target;   // greedy i* or blind target rank
  Cut cut;
};

// Mana fraction of the lighter of a and its complement in 1..n.
// Throws like mass_fraction on invalid ranks.
double damage(const std::vector<std::size_t>& a, const ManaDistribution& dist);

// Builds the frontier from c.links (ties in endpoint Mana go to the larger
// rank) and returns its Mana fraction. Also fills c.frontier.
double cut_cost(Cut& c, const ManaDistribution& dist);

// Removes the highest-betweenness edge, recomputing betweenness after every
// removal, until the graph has more than one component. Betweenness ties are
// broken toward the lexicographically smallest edge. An input that is already
// disconnected yields success with an empty cut and zero cost.
AttackOutcome betweenness_attack(const Graph& g, const ManaDistribution& dist, int jobs = 0);

struct GreedyRow {
  std::size_t i_star = 0;
  double damage = 0.0;
  double cost = 0.0;
  double efficiency = 0.0;  // +inf when cost=0 and damage>0
};

// For every split rank i* in 1..n-1: cut = edges crossing {i <= i*} | {i > i*},
// with damage, frontier cost, and efficiency per row.
std::vector<GreedyRow> greedy_scan(const Graph& g, const ManaDistribution& dist);

// Picks the scan row with maximal efficiency (ties toward the smallest i*;
// a zero-cost, positive-damage row wins outright).
AttackOutcome greedy_attack(const Graph& g, const ManaDistribution& dist);

// Ranks within the window |target - i| < l, truncated to 1..n.
// Throws std::out_of_range for target outside 1..n, std::invalid_argument
// for l < 1.
std::vector<std::size_t> blind_control_set(std::size_t target, std::size_t l, std::size_t n);

// Removes the control set; success iff at least two components survive.
// Cost counts the whole control set; damage is the surviving mass outside the
// heaviest surviving component, capped at 0.5.
AttackOutcome blind_attack(const Graph& g, const ManaDistribution& dist, std::size_t target,
                           std::size_t l);

}  // namespace peersplit
