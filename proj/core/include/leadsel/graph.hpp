#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace leadsel {

using NodeId = int;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Neighbor {
  NodeId node = 0;
  double weight = 1.0;
};

/// Undirected, weighted, connected graph on nodes 0..n-1.
///
/// Immutable once constructed. Edges are stored canonically (u < v, sorted),
/// so two graphs with the same edge set compare equal regardless of the order
/// or orientation in which the edges were supplied.
class Graph {
 public:
  /// Validates and builds a graph. Rejects self-loops, duplicate undirected
  /// edges, nonpositive or non-finite weights, out-of-range ids, and
  /// disconnected inputs (leadsel::Error with the matching Errc).
  static Graph from_edges(int node_count, std::vector<Edge> edges);

  int node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(NodeId u) const;
  double weighted_degree(NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  Graph() = default;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

/// Parses the whitespace-separated edge-list format: one "u v" or "u v w"
/// per line, '#' starts a comment, an optional "n=<int>" line fixes the node
/// count (otherwise max id + 1).
Graph parse_edge_list(std::string_view text);
Graph read_edge_list_file(const std::string& path);

/// Canonical form: "n=<n>" header, then "u v w" with u < v in sorted order.
std::string serialize_edge_list(const Graph& g);

/// L = D - A, dense. Off-diagonals are -a_ij and each diagonal is the sum of
/// the negated off-diagonal entries of its row, so rows sum to zero.
Eigen::MatrixXd laplacian(const Graph& g);

Graph cycle_graph(int n);
Graph path_graph(int n);
Graph complete_graph(int n);
/// G(n, p) conditioned on connectivity: redraws until connected, at most
/// `max_attempts` times. Deterministic for a fixed seed on every platform
/// (mt19937_64 bits, no std distributions).
Graph erdos_renyi(int n, double p, std::uint64_t seed, int max_attempts = 1000);

bool is_cycle_graph(const Graph& g);
bool is_path_graph(const Graph& g);

}  // namespace leadsel
