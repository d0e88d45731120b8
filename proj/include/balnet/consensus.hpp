#pragma once

#include <span>
#include <vector>

#include "balnet/bistochastic.hpp"
#include "balnet/graph.hpp"
#include "balnet/trace.hpp"

namespace balnet {

struct ConsensusResult {
  /// values[k] is the node value vector after k rounds; values[0] = x0.
  std::vector<std::vector<double>> values;
  WeightState weights;
  bool converged = false;
  std::size_t rounds = 0;
};

/// (W x)_j = w_jj x_j + sum over in-edges i -> j of w_ji x_i.
std::vector<double> apply_weight_matrix(const Digraph& g, const WeightState& w, std::span<const double> x);

/**
 * Average consensus driven by the bistochastic formation iteration: each
 * round applies the current column stochastic matrix, x[k+1] = W[k] x[k],
 * then advances the weights to W[k+1]. Stops once every value is within
 * stop.tol of the mean of x0.
 */
ConsensusResult consensus_run(const Digraph& g, const BistochasticParams& params, std::span<const double> x0,
                              const StopRule& stop = {});

}  // namespace balnet
