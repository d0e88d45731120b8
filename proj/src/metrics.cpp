#include "balnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace balnet {

namespace {

void require_self(const Digraph& g, const WeightState& w) {
  if (w.self.size() != g.node_count()) {
    throw std::invalid_argument("weight state has no self-weights");
  }
}

}  // namespace

double weight_between(const Digraph& g, const WeightState& w, NodeId src, NodeId dst) {
  auto e = g.find_edge(src, dst);
  return e ? w.edge[*e] : 0.0;
}

double in_weight(const Digraph& g, const WeightState& w, NodeId j) {
  double s = 0.0;
  for (EdgeId e : g.in_edges(j)) s += w.edge[e];
  return s;
}

double out_weight(const Digraph& g, const WeightState& w, NodeId j) {
  double s = 0.0;
  for (EdgeId e : g.out_edges(j)) s += w.edge[e];
  return s;
}

double imbalance(const Digraph& g, const WeightState& w, NodeId j) {
  return in_weight(g, w, j) - out_weight(g, w, j);
}

std::vector<double> in_weights(const Digraph& g, const WeightState& w) {
  std::vector<double> s(g.node_count());
  for (NodeId j = 0; j < s.size(); ++j) s[j] = in_weight(g, w, j);
  return s;
}

std::vector<double> out_weights(const Digraph& g, const WeightState& w) {
  std::vector<double> s(g.node_count());
  for (NodeId j = 0; j < s.size(); ++j) s[j] = out_weight(g, w, j);
  return s;
}

std::vector<double> imbalances(const Digraph& g, const WeightState& w) {
  std::vector<double> x(g.node_count());
  for (NodeId j = 0; j < x.size(); ++j) x[j] = imbalance(g, w, j);
  return x;
}

double absolute_balance(const Digraph& g, const WeightState& w) {
  double eps = 0.0;
  for (NodeId j = 0; j < g.node_count(); ++j) eps += std::abs(imbalance(g, w, j));
  return eps;
}

double column_stochastic_error(const Digraph& g, const WeightState& w) {
  require_self(g, w);
  double worst = 0.0;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    worst = std::max(worst, std::abs(w.self[j] + out_weight(g, w, j) - 1.0));
  }
  return worst;
}

BistochasticGap bistochastic_gap(const Digraph& g, const WeightState& w) {
  require_self(g, w);
  BistochasticGap gap;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    gap.value += std::abs(1.0 - (w.self[j] + in_weight(g, w, j)));
  }
  gap.column_error = column_stochastic_error(g, w);
  gap.flagged = gap.column_error > 1e-9;
  return gap;
}

double total_mass(const Digraph& g, const WeightState& w, std::span<const double> beta) {
  if (beta.size() != g.node_count()) throw std::invalid_argument("beta has wrong length");
  double mass = 0.0;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    if (!(beta[j] > 0.0)) {
      throw std::invalid_argument("mass undefined: beta_" + std::to_string(j) + " must be positive");
    }
    mass += out_weight(g, w, j) / beta[j];
  }
  return mass;
}

bool has_uniform_out_weights(const Digraph& g, const WeightState& w) {
  for (NodeId j = 0; j < g.node_count(); ++j) {
    auto ids = g.out_edges(j);
    for (EdgeId e : ids) {
      if (w.edge[e] != w.edge[ids.front()]) return false;
    }
  }
  return true;
}

}  // namespace balnet
