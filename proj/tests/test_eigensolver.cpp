#include <doctest.h>

#include <algorithm>
#include <complex>

#include "balnet/eigensolver.hpp"
#include "balnet/rng.hpp"
#include "balnet/spectral.hpp"
#include "support.hpp"

#ifdef BALNET_HAVE_EIGEN
#include <Eigen/Eigenvalues>
#endif

using namespace balnet;
using cplx = std::complex<double>;

namespace {

// Largest distance from a planted eigenvalue to its greedily matched computed one.
double match_error(std::vector<cplx> expected, std::vector<cplx> got) {
  REQUIRE(expected.size() == got.size());
  double worst = 0.0;
  for (const cplx& e : expected) {
    auto best = std::min_element(got.begin(), got.end(),
                                 [&](const cplx& a, const cplx& b) { return std::abs(a - e) < std::abs(b - e); });
    worst = std::max(worst, std::abs(*best - e));
    got.erase(best);
  }
  return worst;
}

double modulus_error(std::vector<cplx> expected, std::vector<cplx> got) {
  auto mod = [](std::vector<cplx>& v) {
    std::vector<double> m;
    for (const cplx& z : v) m.push_back(std::abs(z));
    std::sort(m.begin(), m.end());
    return m;
  };
  return test::max_abs_diff(mod(expected), mod(got));
}

// Q T Q with Q a Householder reflection, so the spectrum is that of T.
Matrix reflect(const Matrix& t, Rng& rng) {
  const std::size_t n = t.size();
  std::vector<double> v(n);
  double vv = 0.0;
  for (double& x : v) {
    x = rng.uniform() - 0.5;
    vv += x * x;
  }
  Matrix q = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) -= 2.0 * v[i] * v[j] / vv;
  return q * t * q;
}

// Quasi-triangular matrix with a planted spectrum: real diagonal entries and
// 2x2 rotation-scaling blocks for conjugate pairs.
Matrix planted(std::size_t n, Rng& rng, std::vector<cplx>& spectrum) {
  Matrix t(n);
  spectrum.clear();
  std::size_t i = 0;
  while (i < n) {
    if (i + 1 < n && rng.uniform() < 0.4) {
      const double re = 2.0 * rng.uniform() - 1.0, im = 0.05 + rng.uniform();
      t(i, i) = re;
      t(i + 1, i + 1) = re;
      t(i, i + 1) = im;
      t(i + 1, i) = -im;
      spectrum.emplace_back(re, im);
      spectrum.emplace_back(re, -im);
      i += 2;
    } else {
      t(i, i) = 4.0 * rng.uniform() - 2.0;
      spectrum.emplace_back(t(i, i), 0.0);
      ++i;
    }
  }
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c)
      if (t(r, c) == 0.0 && !(c == r + 1 && t(c, r) != 0.0)) t(r, c) = rng.uniform() - 0.5;
  return t;
}

}  // namespace

TEST_CASE("small cases") {
  CHECK(eigenvalues(Matrix{{3.0}}) == std::vector<cplx>{3.0});
  CHECK(match_error({1.0, 0.0}, eigenvalues(Matrix{{0.5, 0.5}, {0.5, 0.5}})) <= 1e-15);
  CHECK(match_error({cplx(0, 1), cplx(0, -1)}, eigenvalues(Matrix{{0.0, 1.0}, {-1.0, 0.0}})) <= 1e-15);
  CHECK(match_error({0.0, 0.0, 0.0}, eigenvalues(Matrix(3))) == 0.0);
  CHECK(match_error({1.0, 1.0, 1.0, 1.0}, eigenvalues(Matrix::identity(4))) <= 1e-15);
  // Cyclic permutation: the fourth roots of unity.
  const Matrix perm{{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  CHECK(match_error({1.0, -1.0, cplx(0, 1), cplx(0, -1)}, eigenvalues(perm)) <= 1e-12);
}

TEST_CASE("size cap") {
  CHECK_THROWS_AS(eigenvalues(Matrix(5), EigenOptions{4, 60}), EigenError);
  CHECK_NOTHROW(eigenvalues(Matrix(4), EigenOptions{4, 60}));
}

TEST_CASE("Hessenberg reduction is an orthogonal similarity") {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + rng.below(20);
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform() - 0.5;
    Matrix h = a;
    reduce_to_hessenberg(h);
    double tr_a = 0.0, tr_h = 0.0, fro_a = 0.0, fro_h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      tr_a += a(i, i);
      tr_h += h(i, i);
      for (std::size_t j = 0; j < n; ++j) {
        fro_a += a(i, j) * a(i, j);
        fro_h += h(i, j) * h(i, j);
        if (i > j + 1) CHECK(std::abs(h(i, j)) <= 1e-14);
      }
    }
    CHECK(tr_h == doctest::Approx(tr_a).epsilon(1e-12));
    CHECK(fro_h == doctest::Approx(fro_a).epsilon(1e-12));
  }
}

TEST_CASE("balancing keeps the spectrum") {
  Rng rng(13);
  std::vector<cplx> planted_spectrum;
  Matrix t = reflect(planted(8, rng, planted_spectrum), rng);
  // Badly scaled diagonal similarity.
  for (std::size_t i = 0; i < 8; ++i) {
    const double s = std::pow(10.0, static_cast<double>(i) - 4.0);
    for (std::size_t j = 0; j < 8; ++j) {
      t(i, j) *= s;
      t(j, i) /= s;
    }
  }
  Matrix b = t;
  balance_matrix(b);
  auto frobenius = [](const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (double x : m.row(i)) s += x * x;
    return s;
  };
  CHECK(frobenius(b) < 1e-3 * frobenius(t));
  CHECK(match_error(planted_spectrum, eigenvalues(b)) <= 1e-9);
  CHECK(match_error(planted_spectrum, eigenvalues(t)) <= 1e-9);
}

TEST_CASE("planted spectra") {
  Rng rng(2718);
  double worst_modulus = 0.0, worst_value = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(40);
    std::vector<cplx> spectrum;
    const Matrix a = reflect(planted(n, rng, spectrum), rng);
    const auto got = eigenvalues(a);
    worst_modulus = std::max(worst_modulus, modulus_error(spectrum, got));
    worst_value = std::max(worst_value, match_error(spectrum, got));
  }
  CHECK(worst_modulus <= 1e-9);
  CHECK(worst_value <= 1e-8);
}

TEST_CASE("periodic update matrix has a second unit-modulus eigenvalue") {
  const Digraph g = test::periodic();
  const auto ev = eigenvalues(build_update_matrix(g, std::vector<double>(4, 1.0)).entries);
  const auto count = std::count_if(ev.begin(), ev.end(), [](const cplx& z) { return std::abs(std::abs(z) - 1.0) < 1e-9; });
  CHECK(count == 2);
  CHECK(std::any_of(ev.begin(), ev.end(), [](const cplx& z) { return std::abs(z + 1.0) < 1e-9; }));
}

#ifdef BALNET_HAVE_EIGEN
TEST_CASE("agrees with Eigen on random dense and update matrices") {
  Rng rng(4);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(60);
    Matrix a(n);
    if (trial % 2 == 0) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.uniform() - 0.5;
    } else {
      const Digraph g = random_strongly_connected(n, 0.3 * rng.uniform(), rng.below(1u << 30));
      std::vector<double> beta(n);
      for (double& b : beta) b = 0.05 + 0.95 * rng.uniform();
      a = build_update_matrix(g, beta).entries;
    }
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    REQUIRE(es.info() == Eigen::Success);
    std::vector<cplx> oracle(es.eigenvalues().begin(), es.eigenvalues().end());
    worst = std::max(worst, modulus_error(oracle, eigenvalues(a)));
  }
  CHECK(worst <= 1e-9);
}
#endif
