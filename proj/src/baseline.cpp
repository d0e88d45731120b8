#include "balnet/baseline.hpp"

#include <stdexcept>

#include "balnet/balancer.hpp"
#include "iterate.hpp"

namespace balnet {

WeightState imbalance_correcting_round(const Digraph& g, const WeightState& w) {
  WeightState next = w;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    const double x = imbalance(g, w, j);
    if (!(x > 0.0)) continue;
    auto ids = g.out_edges(j);
    if (ids.empty()) continue;
    // Out-edges are ordered by destination, so strict < keeps the lowest id on ties.
    EdgeId lightest = ids.front();
    for (EdgeId e : ids) {
      if (w.edge[e] < w.edge[lightest]) lightest = e;
    }
    next.edge[lightest] += x;
  }
  return next;
}

RunResult run_imbalance_correcting(const Digraph& g, const StopRule& stop, bool strict) {
  if (strict ? !is_strongly_connected(g) : !is_union_of_strong_components(g)) {
    throw std::invalid_argument("graph is not strongly connected");
  }
  return detail::iterate(
      "baseline", init_unit_weights(g), stop,
      [&](const WeightState& w) {
        RoundRecord rec;
        rec.epsilon = absolute_balance(g, w);
        return rec;
      },
      [&](const WeightState& w, RoundRecord&) { return imbalance_correcting_round(g, w); });
}

}  // namespace balnet
