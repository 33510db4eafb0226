#include "peersplit/graph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

namespace peersplit {

Graph::Graph(std::size_t n) : adj_(n), present_(n, 1), node_count_(n) {}

void Graph::check_label(std::size_t i) const {
  if (i < 1 || i > adj_.size()) {
    throw std::out_of_range("graph label " + std::to_string(i) + " outside 1.." +
                            std::to_string(adj_.size()));
  }
}

bool Graph::has_node(std::size_t i) const {
  check_label(i);
  return present_[i - 1] != 0;
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
  check_label(a);
  check_label(b);
  const auto& nb = adj_[a - 1];
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t Graph::degree(std::size_t i) const {
  check_label(i);
  return adj_[i - 1].size();
}

const std::vector<std::size_t>& Graph::neighbors(std::size_t i) const {
  check_label(i);
  return adj_[i - 1];
}

std::vector<std::size_t> Graph::nodes() const {
  std::vector<std::size_t> out;
  out.reserve(node_count_);
  for (std::size_t i = 1; i <= adj_.size(); ++i) {
    if (present_[i - 1]) out.push_back(i);
  }
  return out;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t i = 1; i <= adj_.size(); ++i) {
    for (std::size_t j : adj_[i - 1]) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

void Graph::add_edge(std::size_t a, std::size_t b) {
  check_label(a);
  check_label(b);
  if (a == b) throw std::invalid_argument("add_edge: self-loop at " + std::to_string(a));
  if (!present_[a - 1] || !present_[b - 1]) {
    throw std::invalid_argument("add_edge: absent endpoint");
  }
  auto& na = adj_[a - 1];
  auto it = std::lower_bound(na.begin(), na.end(), b);
  if (it != na.end() && *it == b) {
    throw std::invalid_argument("add_edge: duplicate edge (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
  }
  na.insert(it, b);
  auto& nb = adj_[b - 1];
  nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
  ++edge_count_;
}

std::vector<std::vector<std::size_t>> components(const Graph& g) {
  const std::size_t n = g.label_bound();
  std::vector<char> visited(n, 0);
  std::vector<std::vector<std::size_t>> comps;
  std::vector<std::size_t> stack;
  for (std::size_t start = 1; start <= n; ++start) {
    if (visited[start - 1] || !g.has_node(start)) continue;
    std::vector<std::size_t> comp;
    stack.assign(1, start);
    visited[start - 1] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (std::size_t v : g.neighbors(u)) {
        if (!visited[v - 1]) {
          visited[v - 1] = 1;
          stack.push_back(v);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

Graph remove_edge(const Graph& g, Edge e) {
  const auto [a, b] = make_edge(e.first, e.second);
  if (!g.has_edge(a, b)) {
    throw std::invalid_argument("remove_edge: edge (" + std::to_string(a) + "," +
                                std::to_string(b) + ") not found");
  }
  Graph out = g;
  auto& na = out.adj_[a - 1];
  na.erase(std::lower_bound(na.begin(), na.end(), b));
  auto& nb = out.adj_[b - 1];
  nb.erase(std::lower_bound(nb.begin(), nb.end(), a));
  --out.edge_count_;
  return out;
}

Graph remove_nodes(const Graph& g, const std::vector<std::size_t>& ranks) {
  std::vector<char> drop(g.label_bound(), 0);
  for (std::size_t r : ranks) {
    if (r < 1 || r > g.label_bound()) {
      throw std::out_of_range("remove_nodes: rank " + std::to_string(r) + " outside 1.." +
                              std::to_string(g.label_bound()));
    }
    drop[r - 1] = 1;
  }
  Graph out;
  out.adj_.assign(g.label_bound(), {});
  out.present_.resize(g.label_bound());
  out.node_count_ = 0;
  out.edge_count_ = 0;
  for (std::size_t i = 1; i <= g.label_bound(); ++i) {
    out.present_[i - 1] = g.present_[i - 1] && !drop[i - 1];
    if (out.present_[i - 1]) ++out.node_count_;
  }
  for (std::size_t i = 1; i <= g.label_bound(); ++i) {
    if (!out.present_[i - 1]) continue;
    auto& ni = out.adj_[i - 1];
    for (std::size_t j : g.adj_[i - 1]) {
      if (out.present_[j - 1]) ni.push_back(j);
    }
    for (std::size_t j : ni) {
      if (j > i) ++out.edge_count_;
    }
  }
  return out;
}

std::string to_edge_list(const Graph& g) {
  std::ostringstream os;
  os << "# n=" << g.label_bound() << "\n";
  for (const auto& [i, j] : g.edges()) {
    os << i << " " << j << "\n";
  }
  return os.str();
}

Graph from_edge_list(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header) || header.rfind("# n=", 0) != 0) {
    throw std::invalid_argument("edge list: missing '# n=<N>' header");
  }
  std::size_t n = 0;
  try {
    n = std::stoull(header.substr(4));
  } catch (const std::exception&) {
    throw std::invalid_argument("edge list: bad node count in header");
  }
  if (n < 1) throw std::invalid_argument("edge list: node count must be >= 1");
  Graph g(n);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::size_t a = 0, b = 0;
    if (!(ls >> a >> b)) {
      throw std::invalid_argument("edge list: malformed line '" + line + "'");
    }
    g.add_edge(a, b);
  }
  return g;
}

}  // namespace peersplit
