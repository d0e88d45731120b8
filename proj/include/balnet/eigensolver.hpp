#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "balnet/dense_matrix.hpp"

namespace balnet {

class EigenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EigenOptions {
  /// Largest accepted dimension.
  std::size_t max_size = 200;
  /// QR sweeps allowed per eigenvalue before giving up. Exceptional shifts
  /// are applied every tenth sweep.
  int max_sweeps = 60;
};

/// Parlett-Reinsch balancing: diagonal similarity by powers of two that
/// equalizes row and column norms. Eigenvalues are unchanged.
void balance_matrix(Matrix& a);

/// Householder reduction to upper Hessenberg form (in place, similarity).
void reduce_to_hessenberg(Matrix& a);

/// All eigenvalues of an upper Hessenberg matrix by Francis double-shift QR
/// with deflation. Destroys `h`. Complex pairs are returned adjacently.
std::vector<std::complex<double>> hessenberg_eigenvalues(Matrix& h, int max_sweeps = 60);

/// Balance, reduce and iterate. Throws EigenError if the matrix is larger
/// than options.max_size or the iteration fails to converge.
std::vector<std::complex<double>> eigenvalues(Matrix a, const EigenOptions& options = {});

}  // namespace balnet
