#include "balnet/consensus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace balnet {

std::vector<double> apply_weight_matrix(const Digraph& g, const WeightState& w, std::span<const double> x) {
  if (x.size() != g.node_count()) throw std::invalid_argument("value vector has wrong length");
  std::vector<double> y(x.size());
  for (NodeId j = 0; j < g.node_count(); ++j) {
    double s = w.has_self_weights() ? w.self[j] * x[j] : 0.0;
    for (EdgeId e : g.in_edges(j)) s += w.edge[e] * x[g.edge(e).src];
    y[j] = s;
  }
  return y;
}

ConsensusResult consensus_run(const Digraph& g, const BistochasticParams& params, std::span<const double> x0,
                              const StopRule& stop) {
  validate(g, params);
  if (x0.size() != g.node_count()) {
    throw std::invalid_argument("x0 has " + std::to_string(x0.size()) + " entries, graph has " +
                                std::to_string(g.node_count()) + " nodes");
  }
  const double mean = std::accumulate(x0.begin(), x0.end(), 0.0) / static_cast<double>(x0.size());
  auto spread = [mean](const std::vector<double>& x) {
    double worst = 0.0;
    for (double v : x) worst = std::max(worst, std::abs(v - mean));
    return worst;
  };

  ConsensusResult res;
  res.weights = initial_state(g, params);
  res.values.emplace_back(x0.begin(), x0.end());
  for (std::size_t k = 0;; ++k) {
    if (spread(res.values.back()) <= stop.tol) {
      res.converged = true;
      res.rounds = k;
      break;
    }
    if (k == stop.max_rounds) {
      res.rounds = k;
      break;
    }
    res.values.push_back(apply_weight_matrix(g, res.weights, res.values.back()));
    res.weights = algo2_round(g, res.weights, params).weights;
  }
  return res;
}

}  // namespace balnet
