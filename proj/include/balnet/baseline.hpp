#pragma once

#include "balnet/graph.hpp"
#include "balnet/metrics.hpp"
#include "balnet/trace.hpp"

namespace balnet {

/// Imbalance-correcting comparison scheme. Each round, every node with
/// positive imbalance x_j adds all of x_j to its lightest out-edge (ties go to
/// the smallest destination id). Nodes with x_j <= 0 do nothing. All nodes act
/// on the same snapshot.
WeightState imbalance_correcting_round(const Digraph& g, const WeightState& w);

/// Runs from unit weights with the same stop rule as weight balancing.
/// `strict` requires a strongly connected graph; otherwise a union of
/// strongly connected components is accepted.
RunResult run_imbalance_correcting(const Digraph& g, const StopRule& stop = {}, bool strict = true);

}  // namespace balnet
