#pragma once

#include <cstddef>
#include <vector>

namespace peersplit {

// Ranked Zipf endowment m(i) = k_const * i^(-s), ranks 1..n (rank 1 richest).
// Immutable after construction; safe to share across threads.
struct ManaDistribution {
  std::size_t n = 0;
  double s = 0.0;
  double k_const = 0.0;
  std::vector<double> values;  // values[i - 1] = m(i)
  std::vector<double> prefix;  // prefix[i] = m(1) + ... + m(i); prefix[0] = 0
  double total = 0.0;          // equals prefix[n]

  // m(rank), 1-based. Throws std::out_of_range for rank outside 1..n.
  double value(std::size_t rank) const;

  // Mass of the contiguous rank range [lo, hi], inclusive, as an absolute sum.
  // Throws std::out_of_range unless 1 <= lo <= hi <= n.
  double mass(std::size_t lo, std::size_t hi) const;
};

// Throws std::invalid_argument for n < 2, s < 0, or k_const <= 0.
ManaDistribution build_mana(std::size_t n, double s, double k_const = 1e10);

// Sum of m(i) over the given ranks divided by the total mass M; ranks form a
// set. Throws std::out_of_range for a rank outside 1..n and
// std::invalid_argument on duplicates.
double mass_fraction(const ManaDistribution& dist, const std::vector<std::size_t>& ranks);

}  // namespace peersplit
