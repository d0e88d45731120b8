#pragma once

#include <span>
#include <vector>

#include "balnet/graph.hpp"

namespace balnet {

/**
 * Edge weights indexed by EdgeId, plus per-node self-weights.
 *
 * `self` is empty for weight balancing and holds one entry per node when the
 * state represents a (column stochastic) matrix with diagonal.
 */
struct WeightState {
  std::vector<double> edge;
  std::vector<double> self;

  bool has_self_weights() const { return !self.empty(); }
};

/// Weight on src -> dst; 0 for a non-edge.
double weight_between(const Digraph& g, const WeightState& w, NodeId src, NodeId dst);

/// S_j^-: sum of weights on edges entering j (self-weight excluded).
double in_weight(const Digraph& g, const WeightState& w, NodeId j);
/// S_j^+: sum of weights on edges leaving j (self-weight excluded).
double out_weight(const Digraph& g, const WeightState& w, NodeId j);
/// x_j = S_j^- - S_j^+.
double imbalance(const Digraph& g, const WeightState& w, NodeId j);

std::vector<double> in_weights(const Digraph& g, const WeightState& w);
std::vector<double> out_weights(const Digraph& g, const WeightState& w);
std::vector<double> imbalances(const Digraph& g, const WeightState& w);

/// Sum over nodes of |x_j|. Zero exactly when the state is weight-balanced.
double absolute_balance(const Digraph& g, const WeightState& w);

/// Largest |w_jj + S_j^+ - 1| over nodes. Requires self-weights.
double column_stochastic_error(const Digraph& g, const WeightState& w);

struct BistochasticGap {
  double value = 0.0;
  double column_error = 0.0;
  /// Set when the state is not column stochastic within 1e-9, in which case
  /// `value` no longer measures distance to a doubly stochastic matrix.
  bool flagged = false;
};

/// Sum over nodes of |1 - (w_jj + S_j^-)|, the row-sum defect of the full
/// matrix. Requires self-weights.
BistochasticGap bistochastic_gap(const Digraph& g, const WeightState& w);

/// Sum over nodes of S_j^+ / beta_j. For the uniform-outgoing states the
/// algorithms produce, S_j^+ = D_j^+ w_j, so this is 1^T B^-1 D w.
/// Throws std::invalid_argument when some beta_j <= 0.
double total_mass(const Digraph& g, const WeightState& w, std::span<const double> beta);

/// True when all out-edges of each node carry exactly the same weight.
bool has_uniform_out_weights(const Digraph& g, const WeightState& w);

}  // namespace balnet
