#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace peersplit {

// Canonical undirected edge: first < second, both 1-based ranks.
using Edge = std::pair<std::size_t, std::size_t>;

inline Edge make_edge(std::size_t a, std::size_t b) noexcept {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Undirected simple graph over rank labels 1..label_bound. Nodes can be
// absent (induced subgraphs keep the original labels). Neighbor lists stay
// sorted so iteration order is deterministic everywhere.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  std::size_t label_bound() const noexcept { return adj_.size(); }
  std::size_t node_count() const noexcept { return node_count_; }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool has_node(std::size_t i) const;
  bool has_edge(std::size_t a, std::size_t b) const;
  std::size_t degree(std::size_t i) const;
  const std::vector<std::size_t>& neighbors(std::size_t i) const;

  std::vector<std::size_t> nodes() const;  // present labels, ascending
  std::vector<Edge> edges() const;         // canonical, lexicographic

  // Throws std::out_of_range for labels outside 1..label_bound,
  // std::invalid_argument for self-loops, duplicates, or absent endpoints.
  void add_edge(std::size_t a, std::size_t b);

 private:
  friend Graph remove_edge(const Graph& g, Edge e);
  friend Graph remove_nodes(const Graph& g, const std::vector<std::size_t>& ranks);

  void check_label(std::size_t i) const;

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<char> present_;
  std::size_t node_count_ = 0;
  std::size_t edge_count_ = 0;
};

// Connected components as sorted rank sets, ordered by smallest contained rank.
std::vector<std::vector<std::size_t>> components(const Graph& g);

// Copy without the given edge. Throws std::invalid_argument if absent.
Graph remove_edge(const Graph& g, Edge e);

// Induced subgraph on the remaining nodes; labels preserved. Throws
// std::out_of_range for an invalid rank. Removing an already-absent node is
// a no-op.
Graph remove_nodes(const Graph& g, const std::vector<std::size_t>& ranks);

// Text edge list: header "# n=<N>" then one "i j" line per edge, i < j,
// sorted lexicographically.
std::string to_edge_list(const Graph& g);

// Parses the format written by to_edge_list. Throws std::invalid_argument on
// malformed input.
Graph from_edge_list(const std::string& text);

}  // namespace peersplit
