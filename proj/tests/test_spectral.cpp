#include <doctest.h>

#include <cmath>
#include <limits>

#include "balnet/balancer.hpp"
#include "balnet/rng.hpp"
#include "balnet/spectral.hpp"
#include "support.hpp"

using namespace balnet;

TEST_CASE("update matrix entries") {
  const Digraph g = test::two_loop();
  const UpdateMatrix p = build_update_matrix(g, std::vector<double>(4, 0.5));
  const Matrix expect{{0.5, 0, 0.5, 0.5}, {0.5, 0.5, 0, 0}, {0, 0.25, 0.5, 0}, {0, 0, 0.5, 0.5}};
  CHECK(p.entries == expect);
  CHECK(p.beta == std::vector<double>(4, 0.5));

  const UpdateMatrix ones = build_update_matrix(g, std::vector<double>(4, 1.0));
  for (std::size_t j = 0; j < 4; ++j) CHECK(ones.entries(j, j) == 0.0);
}

TEST_CASE("update matrix structure on random graphs") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(15);
    const Digraph g = random_strongly_connected(n, rng.uniform(), rng.below(1u << 30));
    std::vector<double> beta(n);
    for (double& b : beta) b = 0.05 + 0.9 * rng.uniform();
    const UpdateMatrix p = build_update_matrix(g, beta);
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < n; ++j) {
      double row = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(p.entries(j, i) >= 0.0);
        if (p.entries(j, i) != 0.0) ++nonzero;
        row += p.entries(j, i);
      }
      const double expect = 1.0 - beta[j] + beta[j] * static_cast<double>(g.in_degree(j)) / static_cast<double>(g.out_degree(j));
      CHECK(row == doctest::Approx(expect).epsilon(1e-14));
    }
    CHECK(nonzero == n + g.edge_count());
  }
}

TEST_CASE("known rates on the two-loop graph") {
  const Digraph g = test::two_loop();
  const std::pair<double, double> cases[] = {{0.1, 0.1204}, {0.5, 0.5180}, {0.9, 0.2524}};
  for (auto [beta, rate] : cases) {
    CAPTURE(beta);
    const SpectralReport rep = spectrum(build_update_matrix(g, std::vector<double>(4, beta)));
    CHECK(rep.rho == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.primitive);
    CHECK(std::abs(convergence_rate(rep) - rate) <= 1e-3);
    CHECK(rep.rate == convergence_rate(rep));
  }
  const SpectralReport half = spectrum(build_update_matrix(g, std::vector<double>(4, 0.5)));
  CHECK(half.delta == doctest::Approx(0.5957).epsilon(1e-4));
  CHECK(half.moduli.size() == 4);
  CHECK(std::is_sorted(half.moduli.rbegin(), half.moduli.rend()));
}

TEST_CASE("two-cycle contracts in one step") {
  const Digraph c = test::two_cycle();
  const SpectralReport rep = spectrum(build_update_matrix(c, std::vector<double>(2, 0.5)));
  CHECK(rep.delta == 0.0);
  CHECK(rep.one_step_contraction());
  CHECK(rep.rate == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(convergence_rate(rep), std::domain_error);
}

TEST_CASE("periodic counterexample") {
  const Digraph g = test::periodic();
  const SpectralReport ones = spectrum(build_update_matrix(g, std::vector<double>(4, 1.0)));
  CHECK_FALSE(ones.primitive);
  CHECK(ones.delta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_WITH_AS(convergence_rate(ones), doctest::Contains("rate undefined"), std::domain_error);

  const SpectralReport repaired = spectrum(build_update_matrix(g, std::vector<double>{0.9, 1.0, 1.0, 1.0}));
  CHECK(repaired.primitive);
  CHECK(repaired.delta < 1.0);
}

TEST_CASE("repeated unit eigenvalue on a union of components") {
  const Digraph two = Digraph::from_edges(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  const SpectralReport rep = spectrum(build_update_matrix(two, std::vector<double>(4, 0.3)));
  CHECK(rep.delta == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(rep.primitive);
}

TEST_CASE("rate tends to zero as delta approaches one") {
  SpectralReport rep;
  rep.primitive = true;
  rep.delta = 0.5957;
  CHECK(convergence_rate(rep) == doctest::Approx(0.5180).epsilon(1e-3));
  double last = convergence_rate(rep);
  for (double d : {0.9, 0.99, 0.999999}) {
    rep.delta = d;
    CHECK(convergence_rate(rep) < last);
    last = convergence_rate(rep);
  }
  CHECK(last < 1e-5);
}

TEST_CASE("property: spectral radius one, companion similarity, primitivity") {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng.below(9);
    const Digraph g = random_strongly_connected(n, rng.uniform() * 0.6, rng.below(1u << 30));
    std::vector<double> beta(n);
    for (double& b : beta) b = rng.uniform() < 0.3 ? 1.0 : 0.05 + 0.9 * rng.uniform();
    beta[rng.below(n)] = 0.5;
    const SpectralReport p = spectrum(build_update_matrix(g, beta));
    const SpectralReport c = spectrum(column_stochastic_companion(g, beta));
    CHECK(p.rho == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(p.delta < 1.0);
    CHECK(p.primitive);
    CHECK(test::max_abs_diff(p.moduli, c.moduli) <= 1e-9);
    for (std::size_t i = 0; i < n; ++i) {
      double col = 0.0;
      for (std::size_t j = 0; j < n; ++j) col += column_stochastic_companion(g, beta)(j, i);
      CHECK(col == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("empirical rate") {
  SUBCASE("log-linear data") {
    RunTrace t;
    for (std::size_t k = 0; k < 200; ++k) t.rounds.push_back({k, 3.0 * std::pow(0.8, static_cast<double>(k)), {}, {}});
    CHECK(std::abs(empirical_rate(t) + std::log(0.8)) <= 1e-10);
    CHECK(std::abs(empirical_rate(t, 0.2) + std::log(0.8)) <= 1e-10);
    CHECK_THROWS_AS(empirical_rate(t, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(empirical_rate(t, 0.5, TraceMetric::ab), std::domain_error);
  }
  SUBCASE("too short") {
    RunTrace t;
    for (std::size_t k = 0; k < 25; ++k) t.rounds.push_back({k, std::pow(0.5, static_cast<double>(k)), {}, {}});
    CHECK_THROWS_AS(empirical_rate(t), std::domain_error);
  }
  SUBCASE("underflowed points are dropped") {
    RunTrace t;
    for (std::size_t k = 0; k < 400; ++k) t.rounds.push_back({k, std::pow(0.8, static_cast<double>(k)), {}, {}});
    t.rounds.push_back({400, 0.0, {}, {}});
    CHECK(empirical_rate(t) == doctest::Approx(-std::log(0.8)).epsilon(1e-10));
  }
  SUBCASE("two-loop graph traces match the spectral rate") {
    const Digraph g = test::two_loop();
    for (double beta : {0.1, 0.5, 0.9}) {
      CAPTURE(beta);
      const auto b = std::vector<double>(4, beta);
      const RunResult r = run_algo1(g, BalancerParams{b, true});
      const double theory = convergence_rate(spectrum(build_update_matrix(g, b)));
      CHECK(std::abs(empirical_rate(r.trace) - theory) <= 0.05 * theory);
    }
  }
  SUBCASE("non-converging trace reports no decay") {
    const Digraph g = test::periodic();
    const RunResult r = run_algo1(g, BalancerParams::uniform(4, 1.0, false), StopRule{1e-10, 2000});
    CHECK_FALSE(r.trace.converged());
    CHECK_THROWS_WITH_AS(empirical_rate(r.trace), doctest::Contains("no decay"), std::domain_error);
  }
}
