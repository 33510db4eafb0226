#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "peersplit/graph.hpp"
#include "peersplit/mana.hpp"

namespace peersplit {

struct FormationParams {
  std::size_t n = 100;       // node count
  double s = 1.0;            // Zipf exponent
  double k_const = 1e10;     // Zipf scale constant
  double rho = 4.0;          // Mana-ratio tolerance, > 1
  std::size_t r_window = 10; // rank window
  std::size_t k_out = 4;     // outgoing link quota; target degree 2*k_out
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument unless n > 2*k_out, rho > 1, r_window >= 1,
// k_out >= 1, s >= 0, k_const > 0.
void validate(const FormationParams& p);

// Ranks j != i eligible to peer with i: either m(i)/rho < m(j) < m(i)*rho
// (strict) or |j - i| < r_window. The ratio test is evaluated on rank ratios,
// (i/j)^s, so the result cannot depend on k_const. Returned sorted ascending.
std::vector<std::size_t> potential_neighbors(std::size_t i, const ManaDistribution& dist,
                                             double rho, std::size_t r_window);

// Per-graph generation diagnostics.
struct FormationStats {
  std::size_t shortfall_nodes = 0;  // nodes that ran out of candidates before
                                    // filling their outgoing quota
};

// Seeded auto-peering procedure: visit nodes in a uniformly random order;
// each node shuffles its candidate list and issues requests one candidate at
// a time, a request to j succeeding iff j has accepted fewer than k_out
// incoming links and the edge does not already exist; a node stops after
// k_out successful outgoing links or candidate exhaustion (single pass).
Graph generate_autopeering(const FormationParams& p, FormationStats* stats = nullptr);

// Path-type lattice: edge (i,j) iff 0 < |i - j| <= k_out; no wraparound.
// Throws std::invalid_argument unless n > 2*k_out and k_out >= 1.
Graph generate_lattice(std::size_t n, std::size_t k_out);

// Watts-Strogatz ring with k_out neighbors per side; each edge is rewired
// with probability rewire_p to a uniformly random target, avoiding self-loops
// and duplicates. Throws std::invalid_argument unless n > 2*k_out,
// k_out >= 1, and rewire_p in [0,1].
Graph generate_ws(std::size_t n, std::size_t k_out, double rewire_p, std::uint64_t seed);

}  // namespace peersplit
