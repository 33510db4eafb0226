#include "peersplit/betweenness.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace peersplit {

namespace {

constexpr std::size_t kChunk = 32;

// Flattened adjacency with a canonical edge id per directed entry.
struct Csr {
  std::vector<std::size_t> offset;   // size label_bound + 1
  std::vector<std::size_t> nbr;      // neighbor labels
  std::vector<std::size_t> eid;      // canonical edge index per entry
  std::vector<std::size_t> sources;  // present labels, ascending
  std::vector<Edge> edges;           // canonical order
};

Csr build_csr(const Graph& g) {
  Csr c;
  const std::size_t n = g.label_bound();
  c.offset.assign(n + 1, 0);
  c.sources = g.nodes();
  c.edges = g.edges();
  for (std::size_t i = 1; i <= n; ++i) {
    c.offset[i] = c.offset[i - 1] + (g.has_node(i) ? g.degree(i) : 0);
  }
  c.nbr.resize(c.offset[n]);
  c.eid.resize(c.offset[n]);
  std::size_t next_id = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (!g.has_node(i)) continue;
    const auto& nb = g.neighbors(i);
    std::copy(nb.begin(), nb.end(), c.nbr.begin() + c.offset[i - 1]);
    for (std::size_t idx = 0; idx < nb.size(); ++idx) {
      if (nb[idx] > i) c.eid[c.offset[i - 1] + idx] = next_id++;
    }
  }
  // Mirror ids onto the reverse entries.
  for (std::size_t i = 1; i <= n; ++i) {
    if (!g.has_node(i)) continue;
    const auto& nb = g.neighbors(i);
    for (std::size_t idx = 0; idx < nb.size(); ++idx) {
      const std::size_t j = nb[idx];
      if (j >= i) break;
      const auto& nbj = g.neighbors(j);
      const std::size_t pos =
          std::lower_bound(nbj.begin(), nbj.end(), i) - nbj.begin();
      c.eid[c.offset[i - 1] + idx] = c.eid[c.offset[j - 1] + pos];
    }
  }
  return c;
}

// One Brandes pass: BFS from source, then reverse dependency accumulation
// onto scores (one full contribution per ordered pair; caller halves).
struct Workspace {
  std::vector<int> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<std::size_t> order;  // BFS visit order
  std::vector<std::size_t> queue;

  explicit Workspace(std::size_t n) : dist(n, -1), sigma(n, 0.0), delta(n, 0.0) {
    order.reserve(n);
    queue.reserve(n);
  }
};

void accumulate_source(const Csr& c, std::size_t source, Workspace& ws,
                       std::vector<double>& scores) {
  ws.order.clear();
  ws.queue.clear();
  const std::size_t s0 = source - 1;
  ws.dist[s0] = 0;
  ws.sigma[s0] = 1.0;
  ws.queue.push_back(source);
  std::size_t head = 0;
  while (head < ws.queue.size()) {
    const std::size_t u = ws.queue[head++];
    ws.order.push_back(u);
    const int du = ws.dist[u - 1];
    for (std::size_t idx = c.offset[u - 1]; idx < c.offset[u]; ++idx) {
      const std::size_t v = c.nbr[idx];
      if (ws.dist[v - 1] < 0) {
        ws.dist[v - 1] = du + 1;
        ws.queue.push_back(v);
      }
      if (ws.dist[v - 1] == du + 1) {
        ws.sigma[v - 1] += ws.sigma[u - 1];
      }
    }
  }
  for (std::size_t r = ws.order.size(); r-- > 1;) {
    const std::size_t w = ws.order[r];
    const int dw = ws.dist[w - 1];
    const double coeff = (1.0 + ws.delta[w - 1]) / ws.sigma[w - 1];
    for (std::size_t idx = c.offset[w - 1]; idx < c.offset[w]; ++idx) {
      const std::size_t v = c.nbr[idx];
      if (ws.dist[v - 1] == dw - 1) {
        const double contrib = ws.sigma[v - 1] * coeff;
        scores[c.eid[idx]] += contrib;
        ws.delta[v - 1] += contrib;
      }
    }
  }
  for (std::size_t u : ws.order) {
    ws.dist[u - 1] = -1;
    ws.sigma[u - 1] = 0.0;
    ws.delta[u - 1] = 0.0;
  }
}

std::vector<EdgeScore> pack(const Csr& c, const std::vector<double>& scores) {
  std::vector<EdgeScore> out(c.edges.size());
  for (std::size_t e = 0; e < c.edges.size(); ++e) {
    out[e] = EdgeScore{c.edges[e], scores[e] * 0.5};
  }
  return out;
}

}  // namespace

std::vector<EdgeScore> edge_betweenness(const Graph& g, int jobs) {
  const Csr c = build_csr(g);
  const std::size_t m = c.edges.size();
  if (m == 0) return {};

  const std::size_t nsrc = c.sources.size();
  const std::size_t nchunks = (nsrc + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(nchunks);

#ifdef _OPENMP
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#else
  (void)jobs;
#endif
  for (std::size_t chunk = 0; chunk < nchunks; ++chunk) {
    std::vector<double> local(m, 0.0);
    Workspace ws(g.label_bound());
    const std::size_t lo = chunk * kChunk;
    const std::size_t hi = std::min(lo + kChunk, nsrc);
    for (std::size_t idx = lo; idx < hi; ++idx) {
      accumulate_source(c, c.sources[idx], ws, local);
    }
    partial[chunk] = std::move(local);
  }

  // Serial reduction in chunk order keeps the floating-point result
  // independent of the thread count.
  std::vector<double> scores(m, 0.0);
  for (const auto& local : partial) {
    for (std::size_t e = 0; e < m; ++e) scores[e] += local[e];
  }
  return pack(c, scores);
}

std::vector<EdgeScore> edge_betweenness_serial(const Graph& g) {
  const Csr c = build_csr(g);
  const std::size_t m = c.edges.size();
  if (m == 0) return {};
  std::vector<double> scores(m, 0.0);
  Workspace ws(g.label_bound());
  for (std::size_t source : c.sources) {
    accumulate_source(c, source, ws, scores);
  }
  return pack(c, scores);
}

}  // namespace peersplit
