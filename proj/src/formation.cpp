#include "peersplit/formation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "peersplit/rng.hpp"

namespace peersplit {

void validate(const FormationParams& p) {
  if (p.k_out < 1) throw std::invalid_argument("formation: k_out must be >= 1");
  if (p.n <= 2 * p.k_out) throw std::invalid_argument("formation: n must exceed 2*k_out");
  if (!(p.rho > 1.0)) throw std::invalid_argument("formation: rho must be > 1");
  if (p.r_window < 1) throw std::invalid_argument("formation: r_window must be >= 1");
  if (!(p.s >= 0.0)) throw std::invalid_argument("formation: s must be >= 0");
  if (!(p.k_const > 0.0)) throw std::invalid_argument("formation: k_const must be > 0");
}

std::vector<std::size_t> potential_neighbors(std::size_t i, const ManaDistribution& dist,
                                             double rho, std::size_t r_window) {
  if (i < 1 || i > dist.n) {
    throw std::out_of_range("potential_neighbors: rank outside 1..n");
  }
  const double inv_rho = 1.0 / rho;
  std::vector<std::size_t> out;
  for (std::size_t j = 1; j <= dist.n; ++j) {
    if (j == i) continue;
    // m(j)/m(i) = (i/j)^s independently of k_const.
    const double ratio = std::pow(static_cast<double>(i) / static_cast<double>(j), dist.s);
    const bool by_mana = inv_rho < ratio && ratio < rho;
    const std::size_t gap = j > i ? j - i : i - j;
    const bool by_rank = gap < r_window;
    if (by_mana || by_rank) out.push_back(j);
  }
  return out;
}

Graph generate_autopeering(const FormationParams& p, FormationStats* stats) {
  validate(p);
  const ManaDistribution dist = build_mana(p.n, p.s, p.k_const);
  Xoshiro256 rng(p.seed);

  std::vector<std::size_t> order(p.n);
  std::iota(order.begin(), order.end(), 1);
  rng.shuffle(order);

  Graph g(p.n);
  std::vector<std::size_t> out_links(p.n, 0);
  std::vector<std::size_t> in_links(p.n, 0);
  std::size_t shortfalls = 0;
  for (std::size_t i : order) {
    std::vector<std::size_t> cand = potential_neighbors(i, dist, p.rho, p.r_window);
    rng.shuffle(cand);
    for (std::size_t j : cand) {
      if (out_links[i - 1] == p.k_out) break;
      if (in_links[j - 1] < p.k_out && !g.has_edge(i, j)) {
        g.add_edge(i, j);
        ++out_links[i - 1];
        ++in_links[j - 1];
      }
    }
    if (out_links[i - 1] < p.k_out) ++shortfalls;
  }
  if (stats) stats->shortfall_nodes = shortfalls;
  return g;
}

Graph generate_lattice(std::size_t n, std::size_t k_out) {
  if (k_out < 1) throw std::invalid_argument("lattice: k_out must be >= 1");
  if (n <= 2 * k_out) throw std::invalid_argument("lattice: n must exceed 2*k_out");
  Graph g(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t d = 1; d <= k_out && i + d <= n; ++d) {
      g.add_edge(i, i + d);
    }
  }
  return g;
}

Graph generate_ws(std::size_t n, std::size_t k_out, double rewire_p, std::uint64_t seed) {
  if (k_out < 1) throw std::invalid_argument("ws: k_out must be >= 1");
  if (n <= 2 * k_out) throw std::invalid_argument("ws: n must exceed 2*k_out");
  if (!(rewire_p >= 0.0 && rewire_p <= 1.0)) {
    throw std::invalid_argument("ws: rewire_p must be in [0,1]");
  }
  Xoshiro256 rng(seed);

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  auto link = [&](std::size_t a, std::size_t b, char v) {
    adj[a - 1][b - 1] = v;
    adj[b - 1][a - 1] = v;
  };
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t d = 1; d <= k_out; ++d) {
      const std::size_t j = (i - 1 + d) % n + 1;
      link(i, j, 1);
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    deg[i - 1] = 2 * k_out;
  }

  for (std::size_t d = 1; d <= k_out; ++d) {
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t j = (i - 1 + d) % n + 1;
      if (!adj[i - 1][j - 1]) continue;  // already rewired away
      if (rng.uniform01() >= rewire_p) continue;
      if (deg[i - 1] == n - 1) continue;  // no free slot to rewire into
      std::size_t t;
      do {
        t = rng.below(n) + 1;
      } while (t == i || adj[i - 1][t - 1]);
      link(i, j, 0);
      link(i, t, 1);
      --deg[j - 1];
      ++deg[t - 1];
    }
  }

  Graph g(n);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (adj[i - 1][j - 1]) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace peersplit
