#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "balnet/dense_matrix.hpp"
#include "balnet/eigensolver.hpp"
#include "balnet/graph.hpp"
#include "balnet/trace.hpp"

namespace balnet {

/**
 * Linear map driving the per-node common out-weights under weight balancing:
 * w[k+1] = P w[k] with
 *
 *   P(j, j) = 1 - beta_j,   P(j, i) = beta_j / D_j^+  for each in-neighbor i of j.
 *
 * Equivalently P = I - B + B D^-1 A with B = diag(beta), D = diag(D^+) and A
 * the 0/1 adjacency matrix (A(j, i) = 1 when i transmits to j).
 */
struct UpdateMatrix {
  Matrix entries;
  std::vector<double> beta;
};

UpdateMatrix build_update_matrix(const Digraph& g, std::span<const double> beta);

/// I - B + A D^-1 B: column stochastic and similar to the update matrix.
Matrix column_stochastic_companion(const Digraph& g, std::span<const double> beta);

struct SpectralReport {
  std::vector<std::complex<double>> eigenvalues;
  /// Moduli sorted in descending order.
  std::vector<double> moduli;
  double rho = 0.0;
  /// Largest modulus after removing the one eigenvalue closest to 1 (when it
  /// lies within unit_tol). Reported as exactly 0 when below 1e-12.
  double delta = 0.0;
  /// -ln(delta); +infinity when delta is 0.
  double rate = 0.0;
  /// Exactly one eigenvalue attains the spectral radius (within unit_tol).
  bool primitive = false;

  /// delta == 0: every non-unit mode vanishes after one round.
  bool one_step_contraction() const { return delta == 0.0; }
};

struct SpectrumOptions {
  EigenOptions eigen;
  double unit_tol = 1e-7;
};

SpectralReport spectrum(const Matrix& m, const SpectrumOptions& options = {});
SpectralReport spectrum(const UpdateMatrix& m, const SpectrumOptions& options = {});

/// Asymptotic decay exponent -ln(delta). Throws std::domain_error when delta
/// is 0 (one-step contraction) or when the matrix is not primitive, in which
/// case the rate is undefined.
double convergence_rate(const SpectralReport& report);

enum class TraceMetric { epsilon, ab };

/**
 * Measured decay exponent: the negated least-squares slope of ln(metric) vs
 * round over the last `tail_fraction` of the usable rounds. Rounds 0..9 are
 * skipped as transient and values <= 1e-14 are dropped. Throws
 * std::domain_error with fewer than 10 usable points or when the fitted
 * slope shows no decay.
 */
double empirical_rate(const RunTrace& trace, double tail_fraction = 0.5,
                      TraceMetric metric = TraceMetric::epsilon);

}  // namespace balnet
