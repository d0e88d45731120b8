#include <doctest.h>

#include "balnet/balancer.hpp"
#include "balnet/rng.hpp"
#include "balnet/spectral.hpp"
#include "support.hpp"

using namespace balnet;

TEST_CASE("unit initialization") {
  const Digraph g = test::two_loop();
  const WeightState w = init_unit_weights(g);
  CHECK(w.edge == std::vector<double>(5, 1.0));
  CHECK_FALSE(w.has_self_weights());
  CHECK(has_uniform_out_weights(g, w));
  CHECK(absolute_balance(test::two_cycle(), init_unit_weights(test::two_cycle())) == 0.0);
}

TEST_CASE("one round on the two-loop graph by hand") {
  const Digraph g = test::two_loop();
  const WeightState w = algo1_round(g, init_unit_weights(g), std::vector<double>(4, 0.5));
  CHECK(test::node_weights(g, w) == std::vector<double>{1.5, 1.0, 0.75, 1.0});
  CHECK(has_uniform_out_weights(g, w));
}

TEST_CASE("balanced uniform state is a fixed point") {
  const Digraph g = test::two_loop();
  WeightState w{std::vector<double>(5), {}};
  for (EdgeId e = 0; e < 5; ++e) w.edge[e] = g.edge(e).src < 2 ? 2.0 : 1.0;
  REQUIRE(absolute_balance(g, w) == 0.0);
  CHECK(algo1_round(g, w, std::vector<double>{0.3, 0.7, 0.2, 0.9}).edge == w.edge);
}

TEST_CASE("parameter validation") {
  const Digraph g = test::two_loop();
  CHECK_NOTHROW(validate(g, BalancerParams::uniform(4, 0.5)));
  CHECK_THROWS_AS(validate(g, BalancerParams::uniform(3, 0.5)), std::invalid_argument);
  CHECK_THROWS_AS(validate(g, BalancerParams::uniform(4, 0.0)), std::invalid_argument);
  CHECK_THROWS_AS(validate(g, BalancerParams::uniform(4, 1.5)), std::invalid_argument);
  CHECK_THROWS_WITH_AS(validate(g, BalancerParams::uniform(4, 1.0)), doctest::Contains("strictly below 1"),
                       std::invalid_argument);
  CHECK_THROWS_AS(validate(g, BalancerParams{{0.9, 1.0, 1.0, 1.0}, true}), std::invalid_argument);
  CHECK_NOTHROW(validate(g, BalancerParams{{0.9, 1.0, 1.0, 1.0}, false}));
  CHECK_NOTHROW(validate(g, BalancerParams::uniform(4, 1.0, false)));

  const Digraph two = Digraph::from_edges(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  CHECK_THROWS_AS(validate(two, BalancerParams::uniform(4, 0.5)), std::invalid_argument);
  CHECK_NOTHROW(validate(two, BalancerParams::uniform(4, 0.5, false)));
  CHECK_THROWS_AS(validate(Digraph::from_edges(3, {{0, 1}, {1, 2}}), BalancerParams::uniform(3, 0.5, false)),
                  std::invalid_argument);
}

TEST_CASE("two-loop graph converges to the same limit for every beta") {
  const Digraph g = test::two_loop();
  for (double beta : {0.1, 0.5, 0.9}) {
    CAPTURE(beta);
    const RunResult r = run_algo1(g, BalancerParams::uniform(4, beta));
    CHECK(r.trace.converged());
    CHECK(r.trace.final_metric() <= 1e-10);
    const auto w = test::node_weights(g, r.weights);
    CHECK(w[0] == doctest::Approx(1.4286).epsilon(1e-3));
    CHECK(w[1] == doctest::Approx(1.4286).epsilon(1e-3));
    CHECK(w[2] == doctest::Approx(0.7143).epsilon(1e-3));
    CHECK(w[3] == doctest::Approx(0.7143).epsilon(1e-3));
  }
}

TEST_CASE("trace bookkeeping") {
  const Digraph g = test::two_loop();
  const RunResult r = run_algo1(g, BalancerParams::uniform(4, 0.5), StopRule{1e-10, 5});
  CHECK(r.trace.algorithm == "algo1");
  CHECK_FALSE(r.trace.converged());
  CHECK(r.trace.stop_reason == StopReason::round_limit);
  CHECK(r.trace.rounds_executed == 5);
  REQUIRE(r.trace.rounds.size() == 6);
  for (std::size_t k = 0; k < r.trace.rounds.size(); ++k) {
    CHECK(r.trace.rounds[k].round == k);
    CHECK_FALSE(r.trace.rounds[k].ab);
  }
  CHECK(r.trace.rounds[0].epsilon == 2.0);

  const RunResult balanced = run_algo1(test::two_cycle(), BalancerParams::uniform(2, 0.5));
  CHECK(balanced.trace.converged());
  CHECK(balanced.trace.rounds_executed == 0);
}

TEST_CASE("property: per-round invariants on random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + rng.below(20);
    const Digraph g = random_strongly_connected(n, rng.uniform() * 0.5, rng.below(1u << 30));
    std::vector<double> beta(n);
    for (double& b : beta) b = 0.05 + 0.9 * rng.uniform();
    WeightState w = init_unit_weights(g);
    const double mass0 = total_mass(g, w, beta);
    for (int k = 0; k < 200; ++k) {
      w = algo1_round(g, w, beta);
      REQUIRE(has_uniform_out_weights(g, w));
      for (double x : w.edge) REQUIRE(x > 0.0);
      REQUIRE(std::abs(total_mass(g, w, beta) - mass0) <= 1e-12 * mass0);
      REQUIRE(std::abs(test::sum(imbalances(g, w))) <= 1e-12);
    }
  }
}

TEST_CASE("property: one round equals the dense update matrix product") {
  Rng rng(99);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(9);
    const Digraph g = random_strongly_connected(n, rng.uniform(), rng.below(1u << 30));
    std::vector<double> beta(n), wn(n);
    for (double& b : beta) b = 0.01 + 0.99 * rng.uniform();
    for (double& x : wn) x = 0.1 + 2.0 * rng.uniform();
    WeightState w{std::vector<double>(g.edge_count()), {}};
    for (EdgeId e = 0; e < g.edge_count(); ++e) w.edge[e] = wn[g.edge(e).src];

    const auto next = test::node_weights(g, algo1_round(g, w, beta));
    const auto dense = build_update_matrix(g, beta).entries.multiply(wn);
    worst = std::max(worst, test::max_abs_diff(next, dense));
  }
  CHECK(worst <= 1e-13);
}

TEST_CASE("non-strongly-connected input in permissive mode balances each component") {
  const Digraph two = Digraph::from_edges(5, {{0, 1}, {1, 0}, {2, 3}, {3, 4}, {4, 2}, {2, 4}});
  const RunResult r = run_algo1(two, BalancerParams::uniform(5, 0.5, false));
  CHECK(r.trace.converged());
  CHECK(absolute_balance(two, r.weights) <= 1e-10);
  CHECK_THROWS(run_algo1(two, BalancerParams::uniform(5, 0.5)));
}
