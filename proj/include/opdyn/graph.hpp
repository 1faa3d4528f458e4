#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace opdyn {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

/**
 * Simple undirected, unweighted graph in compressed neighbor-list form.
 *
 * Every node has degree >= 1 and neighbor lists are sorted by id, so all
 * traversals are deterministic. The random-walk operator P (P_ij = 1/deg(i)
 * on edges) is applied through random_walk_apply and never stored densely.
 * Immutable after construction.
 */
class Graph {
 public:
  /// Builds from an edge list. Duplicates and reversed duplicates collapse.
  /// Throws ValidationError on self-loops, out-of-range endpoints or nodes
  /// in [0, n) without edges.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  /// Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

 private:
  Graph() = default;

  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
};

/// Reads "u v" lines. '#' lines and blank lines are skipped; n = 1 + max id.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(std::string_view text);
Graph load_edge_list(const std::filesystem::path& path);

/// Serializes to the same format parse_edge_list reads.
std::string to_edge_list(const Graph& g);

/// y = P x.
Eigen::VectorXd random_walk_apply(const Graph& g, const Eigen::Ref<const Eigen::VectorXd>& x);

// Small deterministic shapes used by tests, benchmarks and the CLI fixtures.
Graph complete_graph(std::size_t n);
Graph path_graph(std::size_t n);
/// Node 0 is the center.
Graph star_graph(std::size_t n);
/// G(n, p); any node left isolated is attached to a uniformly chosen other
/// node so the result is always valid. Requires n >= 2.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);
/// Random graph with exactly `m` distinct edges plus the isolated-node repair.
Graph random_graph_with_edges(std::size_t n, std::size_t m, std::uint64_t seed);

}  // namespace opdyn
