#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "balnet/graph.hpp"
#include "balnet/metrics.hpp"

namespace balnet::test {

// 0->1, 1->2, 2->0, 2->3, 3->0: loops of length 3 and 4 through node 2, the
// only node with two out-edges.
inline Digraph two_loop() { return Digraph::from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 0}}); }

// Cycles of length 4 and 2 only: irreducible, period 2.
inline Digraph periodic() { return Digraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 3}}); }

inline Digraph two_cycle() { return Digraph::from_edges(2, {{0, 1}, {1, 0}}); }

inline double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

/// Common out-weight of every node, read off its first out-edge.
inline std::vector<double> node_weights(const Digraph& g, const WeightState& w) {
  std::vector<double> out(g.node_count());
  for (NodeId j = 0; j < g.node_count(); ++j) out[j] = w.edge[g.out_edges(j).front()];
  return out;
}

}  // namespace balnet::test
