#pragma once

#include <vector>

#include "peersplit/graph.hpp"

namespace peersplit {

struct EdgeScore {
  Edge edge;
  double score = 0.0;
};

// Exact unnormalized edge betweenness over unordered node pairs, unweighted
// shortest paths, multiplicity split fractionally (each connected pair
// contributes total weight 1). Scores are listed in canonical edge order.
//
// Brandes accumulation from every source; work is parallelized over fixed
// 32-source chunks whose partial sums are reduced in chunk order, so the
// result is bit-identical for every jobs value. jobs <= 0 uses all available
// threads.
std::vector<EdgeScore> edge_betweenness(const Graph& g, int jobs = 0);

// Single-threaded reference accumulating source-by-source into one buffer.
// Kept as an independent check on the chunked kernel.
std::vector<EdgeScore> edge_betweenness_serial(const Graph& g);

}  // namespace peersplit
