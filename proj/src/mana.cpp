#include "peersplit/mana.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace peersplit {

namespace {

// Kahan accumulator; the Zipf tail is many tiny terms, so plain summation in
// rank order would lose them against the head.
struct Compensated {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) noexcept {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

double ManaDistribution::value(std::size_t rank) const {
  if (rank < 1 || rank > n) {
    throw std::out_of_range("mana rank " + std::to_string(rank) + " outside 1.." +
                            std::to_string(n));
  }
  return values[rank - 1];
}

double ManaDistribution::mass(std::size_t lo, std::size_t hi) const {
  if (lo < 1 || hi > n || lo > hi) {
    throw std::out_of_range("mana range [" + std::to_string(lo) + "," + std::to_string(hi) +
                            "] outside 1.." + std::to_string(n));
  }
  return prefix[hi] - prefix[lo - 1];
}

ManaDistribution build_mana(std::size_t n, double s, double k_const) {
  if (n < 2) throw std::invalid_argument("build_mana: n must be >= 2");
  if (!(s >= 0.0)) throw std::invalid_argument("build_mana: s must be >= 0");
  if (!(k_const > 0.0)) throw std::invalid_argument("build_mana: k_const must be > 0");

  ManaDistribution dist;
  dist.n = n;
  dist.s = s;
  dist.k_const = k_const;
  dist.values.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    dist.values[i - 1] = k_const * std::pow(static_cast<double>(i), -s);
  }

  // Accumulate from the smallest values up (descending rank), then derive the
  // ascending prefix sums from the suffix totals.
  std::vector<double> suffix(n + 2, 0.0);
  Compensated acc;
  for (std::size_t i = n; i >= 1; --i) {
    acc.add(dist.values[i - 1]);
    suffix[i] = acc.sum;
  }
  dist.total = suffix[1];
  dist.prefix.assign(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    dist.prefix[i] = dist.total - suffix[i + 1];
  }
  dist.prefix[n] = dist.total;
  return dist;
}

double mass_fraction(const ManaDistribution& dist, const std::vector<std::size_t>& ranks) {
  std::vector<char> seen(dist.n, 0);
  for (std::size_t r : ranks) {
    if (r < 1 || r > dist.n) {
      throw std::out_of_range("mass_fraction: rank " + std::to_string(r) + " outside 1.." +
                              std::to_string(dist.n));
    }
    if (seen[r - 1]) {
      throw std::invalid_argument("mass_fraction: duplicate rank " + std::to_string(r));
    }
    seen[r - 1] = 1;
  }

  // Same descending-rank accumulation as build_mana.
  std::vector<std::size_t> sorted(ranks);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  Compensated acc;
  for (std::size_t r : sorted) acc.add(dist.values[r - 1]);
  return acc.sum / dist.total;
}

}  // namespace peersplit
