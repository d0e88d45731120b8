#include "balnet/balancer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "iterate.hpp"

namespace balnet {

void validate(const Digraph& g, const BalancerParams& params) {
  const std::size_t n = g.node_count();
  if (params.beta.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " beta values, got " +
                                std::to_string(params.beta.size()));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double b = params.beta[j];
    if (!(b > 0.0 && b <= 1.0)) {
      throw std::invalid_argument("beta_" + std::to_string(j) + " = " + std::to_string(b) +
                                  " outside (0, 1]");
    }
  }
  const bool all_one = std::all_of(params.beta.begin(), params.beta.end(), [](double b) { return b == 1.0; });
  if (params.strict) {
    if (all_one) {
      throw std::invalid_argument(
          "at least one beta must be strictly below 1, otherwise the update matrix may be "
          "periodic and the iteration need not converge (pass --permissive to run anyway)");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (params.beta[j] == 1.0) {
        throw std::invalid_argument("strict mode requires every beta in (0, 1); beta_" +
                                    std::to_string(j) + " = 1 (pass --permissive to allow it)");
      }
    }
    if (!is_strongly_connected(g)) {
      throw std::invalid_argument("graph is not strongly connected (strict mode)");
    }
  } else if (!is_union_of_strong_components(g)) {
    throw std::invalid_argument("graph is not a union of strongly connected components; no balancing exists");
  }
}

WeightState init_unit_weights(const Digraph& g) {
  return {std::vector<double>(g.edge_count(), 1.0), {}};
}

WeightState algo1_round(const Digraph& g, const WeightState& w, std::span<const double> beta) {
  WeightState next{std::vector<double>(w.edge.size()), w.self};
  for (NodeId j = 0; j < g.node_count(); ++j) {
    const std::size_t deg = g.out_degree(j);
    if (deg == 0) throw std::invalid_argument("node " + std::to_string(j) + " has no out-neighbors");
    const double target = in_weight(g, w, j) / static_cast<double>(deg);
    for (EdgeId e : g.out_edges(j)) {
      next.edge[e] = w.edge[e] + beta[j] * (target - w.edge[e]);
    }
  }
  return next;
}

RunResult run_algo1(const Digraph& g, const BalancerParams& params, const StopRule& stop) {
  validate(g, params);
  return detail::iterate(
      "algo1", init_unit_weights(g), stop,
      [&](const WeightState& w) {
        RoundRecord rec;
        rec.epsilon = absolute_balance(g, w);
        return rec;
      },
      [&](const WeightState& w, RoundRecord&) { return algo1_round(g, w, params.beta); });
}

}  // namespace balnet
