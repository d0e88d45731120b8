#pragma once

#include <span>
#include <string>
#include <vector>

#include "balnet/graph.hpp"
#include "balnet/metrics.hpp"
#include "balnet/trace.hpp"

namespace balnet {

enum class Algo2Mode {
  /// Shares 1/(1 + D_j^+) at start; step size picked each round from the
  /// local in/out sums so that S_j^+ stays below 1.
  standard,
  /// Out-edges start at 1/(m (1 + D_j^+)) with m >= n and every node keeps the
  /// constant step alpha_j, which makes the iteration linear with a fixed
  /// update matrix.
  scaled_init,
};

/// Accepts "standard", "scaled-init" and the alias "prop3".
Algo2Mode parse_algo2_mode(const std::string& text);
const char* to_string(Algo2Mode mode);

struct BistochasticParams {
  std::vector<double> alpha;
  Algo2Mode mode = Algo2Mode::standard;
  /// Scale for scaled_init; 0 means m = n.
  std::size_t m = 0;
  /// Keep the per-round step sizes in the trace.
  bool record_beta = true;

  static BistochasticParams uniform(std::size_t n, double alpha, Algo2Mode mode = Algo2Mode::standard) {
    return {std::vector<double>(n, alpha), mode, 0, true};
  }
};

/// Throws std::invalid_argument on alpha outside (0, 1), m < n in
/// scaled_init mode, or a graph that is not strongly connected.
void validate(const Digraph& g, const BistochasticParams& params);

/// Every out-edge and the self-weight of j get 1/(1 + D_j^+).
WeightState init_bistochastic_weights(const Digraph& g);

/// Out-edges of j get 1/(m (1 + D_j^+)); the self-weight takes the rest of
/// the column. Throws std::invalid_argument when m < n.
WeightState init_scaled_weights(const Digraph& g, std::size_t m);

/// Step size for a node with in-sum s_minus and out-sum s_plus:
///   alpha (1 - s_plus) / (s_minus - s_plus)   if s_minus > s_plus,
///   alpha                                     otherwise.
/// The first branch may exceed 1; it is the step that lands S^+ exactly at
/// (1 - alpha) s_plus + alpha. When s_plus rounds to 1 the first branch gives
/// 0. Throws std::domain_error if s_plus > 1 + 1e-12 in that branch.
double select_beta(double s_minus, double s_plus, double alpha);

struct Algo2Step {
  WeightState weights;
  std::vector<double> beta;
};

/// One synchronous round on a column stochastic state: pick beta_j, move the
/// out-edges of j towards S_j^- / D_j^+, then set w_jj = 1 - S_j^+. Throws
/// std::runtime_error when a self-weight would drop below -1e-12.
Algo2Step algo2_round(const Digraph& g, const WeightState& w, const BistochasticParams& params);

/// Stops on the row-sum defect (the `ab` column of the trace).
RunResult run_algo2(const Digraph& g, const BistochasticParams& params, const StopRule& stop = {});

/// Initial state for the mode in `params`.
WeightState initial_state(const Digraph& g, const BistochasticParams& params);

}  // namespace balnet
