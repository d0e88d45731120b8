#pragma once

#include <span>
#include <vector>

#include "balnet/graph.hpp"
#include "balnet/metrics.hpp"
#include "balnet/trace.hpp"

namespace balnet {

/// Per-node step sizes for weight balancing.
///
/// strict: every beta_j in (0, 1) and the graph must be strongly connected.
/// permissive: beta_j in (0, 1] (including all ones, whose update matrix can
/// be periodic) and the graph may be a union of strongly connected pieces.
struct BalancerParams {
  std::vector<double> beta;
  bool strict = true;

  static BalancerParams uniform(std::size_t n, double beta, bool strict = true) {
    return {std::vector<double>(n, beta), strict};
  }
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const Digraph& g, const BalancerParams& params);

WeightState init_unit_weights(const Digraph& g);

/// One synchronous round: every out-edge of j moves by
/// beta_j * (S_j^- / D_j^+ - w), with all S_j^- read from `w`.
WeightState algo1_round(const Digraph& g, const WeightState& w, std::span<const double> beta);

/// Iterates from unit weights until absolute balance <= stop.tol or the round
/// limit. Hitting the limit is reported in the trace, not thrown.
RunResult run_algo1(const Digraph& g, const BalancerParams& params, const StopRule& stop = {});

}  // namespace balnet
