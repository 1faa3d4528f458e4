#include "opdyn/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "opdyn/errors.hpp"
#include "opdyn/kernels.hpp"

namespace opdyn {

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count == 0) throw ValidationError("graph has no nodes");

  std::vector<Edge> directed;
  directed.reserve(2 * edges.size());
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= node_count ||
        static_cast<std::size_t>(v) >= node_count) {
      throw ValidationError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") has an endpoint outside [0, " + std::to_string(node_count) + ")");
    }
    if (u == v) throw ValidationError("self-loop at node " + std::to_string(u));
    directed.emplace_back(u, v);
    directed.emplace_back(v, u);
  }
  std::sort(directed.begin(), directed.end());
  directed.erase(std::unique(directed.begin(), directed.end()), directed.end());

  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& [u, v] : directed) ++g.offsets_[u + 1];
  for (std::size_t i = 0; i < node_count; ++i) {
    if (g.offsets_[i + 1] == 0) {
      throw ValidationError("node " + std::to_string(i) + " has no edges");
    }
    g.offsets_[i + 1] += g.offsets_[i];
  }
  g.adjacency_.reserve(directed.size());
  for (const auto& e : directed) g.adjacency_.push_back(e.second);
  return g;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(static_cast<NodeId>(u))) {
      if (static_cast<NodeId>(u) < v) out.emplace_back(static_cast<NodeId>(u), v);
    }
  }
  return out;
}

namespace {

bool parse_node(std::string_view tok, NodeId& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && out >= 0;
}

}  // namespace

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  NodeId max_id = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream tokens(line);
    std::vector<std::string> parts;
    for (std::string tok; tokens >> tok;) parts.push_back(tok);
    NodeId u = 0, v = 0;
    if (parts.size() != 2 || !parse_node(parts[0], u) || !parse_node(parts[1], v)) {
      throw ParseError("line " + std::to_string(line_no) +
                           ": expected two non-negative integers \"u v\", got \"" + line + "\"",
                       line_no);
    }
    if (u == v) {
      throw ValidationError("self-loop at line " + std::to_string(line_no) + " (node " +
                            std::to_string(u) + ")");
    }
    edges.emplace_back(u, v);
    max_id = std::max({max_id, u, v});
  }
  if (edges.empty()) throw ParseError("edge list contains no edges", 0);
  return Graph::from_edges(static_cast<std::size_t>(max_id) + 1, edges);
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list " + path.string(), 0);
  return parse_edge_list(in);
}

std::string to_edge_list(const Graph& g) {
  std::string out;
  for (const auto& [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

Eigen::VectorXd random_walk_apply(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (static_cast<std::size_t>(x.size()) != g.node_count()) {
    throw std::invalid_argument("random_walk_apply: vector length " + std::to_string(x.size()) +
                                " does not match node count " + std::to_string(g.node_count()));
  }
  Eigen::VectorXd y(x.size());
  kernels::walk_apply_omp(g, x, y);
  return y;
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t u = 0; u + 1 < n; ++u) e.emplace_back(u, u + 1);
  return Graph::from_edges(n, e);
}

Graph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t v = 1; v < n; ++v) e.emplace_back(0, v);
  return Graph::from_edges(n, e);
}

namespace {

void attach_isolated(std::size_t n, std::vector<Edge>& edges, std::mt19937_64& rng) {
  std::vector<bool> touched(n, false);
  for (const auto& [u, v] : edges) touched[u] = touched[v] = true;
  std::uniform_int_distribution<std::size_t> pick(0, n - 2);
  for (std::size_t v = 0; v < n; ++v) {
    if (touched[v]) continue;
    std::size_t w = pick(rng);
    if (w >= v) ++w;
    edges.emplace_back(v, w);
    touched[v] = touched[w] = true;
  }
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("erdos_renyi: need n >= 2");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  attach_isolated(n, e, rng);
  return Graph::from_edges(n, e);
}

Graph random_graph_with_edges(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("random_graph_with_edges: need n >= 2");
  if (m > n * (n - 1) / 2) throw std::invalid_argument("random_graph_with_edges: too many edges");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<Edge> e;
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(2 * m);
  while (e.size() < m) {
    std::size_t u = pick(rng), v = pick(rng);
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    const std::uint64_t key = static_cast<std::uint64_t>(u) * n + v;
    if (!seen.insert(key).second) continue;
    e.emplace_back(u, v);
  }
  attach_isolated(n, e, rng);
  return Graph::from_edges(n, e);
}

}  // namespace opdyn
