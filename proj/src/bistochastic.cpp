#include "balnet/bistochastic.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "iterate.hpp"

namespace balnet {

Algo2Mode parse_algo2_mode(const std::string& text) {
  if (text == "standard") return Algo2Mode::standard;
  if (text == "scaled-init" || text == "prop3") return Algo2Mode::scaled_init;
  throw std::invalid_argument("unknown mode '" + text + "' (expected standard or prop3)");
}

const char* to_string(Algo2Mode mode) {
  return mode == Algo2Mode::standard ? "standard" : "prop3";
}

void validate(const Digraph& g, const BistochasticParams& params) {
  const std::size_t n = g.node_count();
  if (params.alpha.size() != n) {
    throw std::invalid_argument("expected " + std::to_string(n) + " alpha values, got " +
                                std::to_string(params.alpha.size()));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double a = params.alpha[j];
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("alpha_" + std::to_string(j) + " = " + std::to_string(a) +
                                  " outside (0, 1)");
    }
  }
  if (params.mode == Algo2Mode::scaled_init && params.m != 0 && params.m < n) {
    throw std::invalid_argument("m = " + std::to_string(params.m) + " must be at least n = " +
                                std::to_string(n));
  }
  if (!is_strongly_connected(g)) throw std::invalid_argument("graph is not strongly connected");
}

WeightState init_bistochastic_weights(const Digraph& g) {
  WeightState w{std::vector<double>(g.edge_count()), std::vector<double>(g.node_count())};
  for (NodeId j = 0; j < g.node_count(); ++j) {
    const double share = 1.0 / (1.0 + static_cast<double>(g.out_degree(j)));
    for (EdgeId e : g.out_edges(j)) w.edge[e] = share;
    w.self[j] = share;
  }
  return w;
}

WeightState init_scaled_weights(const Digraph& g, std::size_t m) {
  if (m < g.node_count()) {
    throw std::invalid_argument("m = " + std::to_string(m) + " must be at least n = " +
                                std::to_string(g.node_count()));
  }
  WeightState w{std::vector<double>(g.edge_count()), std::vector<double>(g.node_count())};
  for (NodeId j = 0; j < g.node_count(); ++j) {
    const double deg = static_cast<double>(g.out_degree(j));
    const double share = 1.0 / (static_cast<double>(m) * (1.0 + deg));
    for (EdgeId e : g.out_edges(j)) w.edge[e] = share;
    w.self[j] = 1.0 - deg * share;
  }
  return w;
}

WeightState initial_state(const Digraph& g, const BistochasticParams& params) {
  if (params.mode == Algo2Mode::standard) return init_bistochastic_weights(g);
  return init_scaled_weights(g, params.m == 0 ? g.node_count() : params.m);
}

double select_beta(double s_minus, double s_plus, double alpha) {
  if (!(s_minus > s_plus)) return alpha;
  if (s_plus > 1.0 + 1e-12) {
    throw std::domain_error("out-weight " + std::to_string(s_plus) +
                            " exceeds 1: column stochastic invariant broken upstream");
  }
  const double room = s_plus < 1.0 ? 1.0 - s_plus : 0.0;
  return alpha * room / (s_minus - s_plus);
}

Algo2Step algo2_round(const Digraph& g, const WeightState& w, const BistochasticParams& params) {
  const std::size_t n = g.node_count();
  Algo2Step out{{std::vector<double>(w.edge.size()), std::vector<double>(n)}, std::vector<double>(n)};
  for (NodeId j = 0; j < n; ++j) {
    const auto ids = g.out_edges(j);
    const double deg = static_cast<double>(ids.size());
    const double common = w.edge[ids.front()];
    const bool uniform = std::all_of(ids.begin(), ids.end(), [&](EdgeId e) { return w.edge[e] == common; });
    const double s_minus = in_weight(g, w, j);
    // With uniform out-weights the step is taken on the common value, so beta
    // and the increment share one computed S- - S+. When that difference is
    // tiny and beta huge, the per-edge form would amplify its rounding error.
    const double s_plus = uniform ? deg * common : out_weight(g, w, j);
    const double beta = params.mode == Algo2Mode::scaled_init
                            ? params.alpha[j]
                            : select_beta(s_minus, s_plus, params.alpha[j]);
    out.beta[j] = beta;

    double new_out = 0.0;
    if (uniform) {
      const double next = common + beta * (s_minus - s_plus) / deg;
      for (EdgeId e : ids) out.weights.edge[e] = next;
      new_out = next * deg;
    } else {
      const double target = s_minus / deg;
      for (EdgeId e : ids) {
        out.weights.edge[e] = w.edge[e] + beta * (target - w.edge[e]);
        new_out += out.weights.edge[e];
      }
    }
    const double self = 1.0 - new_out;
    if (self < -1e-12) {
      throw std::runtime_error("self-weight of node " + std::to_string(j) + " became " +
                               std::to_string(self) + "; out-weight exceeded 1");
    }
    // Rounding can leave a few ulps below zero; the column error stays ~1e-16.
    out.weights.self[j] = self < 0.0 ? 0.0 : self;
  }
  return out;
}

RunResult run_algo2(const Digraph& g, const BistochasticParams& params, const StopRule& stop) {
  validate(g, params);
  return detail::iterate(
      "algo2", initial_state(g, params), stop,
      [&](const WeightState& w) {
        RoundRecord rec;
        rec.epsilon = absolute_balance(g, w);
        rec.ab = bistochastic_gap(g, w).value;
        return rec;
      },
      [&](const WeightState& w, RoundRecord& rec) {
        Algo2Step step = algo2_round(g, w, params);
        if (params.record_beta) rec.beta = std::move(step.beta);
        return std::move(step.weights);
      });
}

}  // namespace balnet
