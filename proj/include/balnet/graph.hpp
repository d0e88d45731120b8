#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace balnet {

using NodeId = std::size_t;
using EdgeId = std::size_t;

/// A directed link: `src` transmits to `dst`.
struct Edge {
  NodeId src;
  NodeId dst;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Immutable directed graph without self-loops or parallel edges.
 *
 * Edges are stored sorted by (src, dst), so the edge ids leaving a node form a
 * contiguous range and out-neighbor lists are ascending. In-neighbor lists are
 * ascending by source id as well.
 */
class Digraph {
 public:
  /// Validates and builds. Throws GraphError on n < 2, out-of-range ids,
  /// self-loops or duplicate edges.
  static Digraph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }

  std::span<const NodeId> out_neighbors(NodeId j) const;
  std::span<const NodeId> in_neighbors(NodeId j) const;
  std::span<const EdgeId> out_edges(NodeId j) const;
  std::span<const EdgeId> in_edges(NodeId j) const;

  std::size_t out_degree(NodeId j) const { return out_offsets_[j + 1] - out_offsets_[j]; }
  std::size_t in_degree(NodeId j) const { return in_offsets_[j + 1] - in_offsets_[j]; }

  std::optional<EdgeId> find_edge(NodeId src, NodeId dst) const;

 private:
  Digraph() = default;

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> out_nbrs_;
  std::vector<EdgeId> out_ids_;
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> in_nbrs_;
  std::vector<EdgeId> in_ids_;
};

/// Parses the edge-list text format: first non-comment line holds n, each
/// following line "src dst". Lines starting with '#' and blank lines are
/// skipped.
Digraph parse_edge_list(std::istream& in);
Digraph parse_edge_list(const std::string& text);
Digraph load_edge_list(const std::string& path);

void write_edge_list(std::ostream& out, const Digraph& g);

bool is_strongly_connected(const Digraph& g);

/// Component index per node; components are numbered in order of their
/// smallest node id.
std::vector<std::size_t> strongly_connected_components(const Digraph& g);

/// True when every edge joins two nodes of the same strongly connected
/// component, i.e. the graph is a disjoint union of strongly connected pieces.
bool is_union_of_strong_components(const Digraph& g);

/// Random Hamiltonian cycle plus each remaining ordered pair with probability
/// `extra_edge_prob`. Deterministic for a given seed on every platform.
Digraph random_strongly_connected(std::size_t n, double extra_edge_prob, std::uint64_t seed);

}  // namespace balnet
