#pragma once

// Internal dense helpers: Gaussian elimination and Perron pairs by power
// iteration. Desk-scale sizes only. Not installed.

#include <vector>

namespace ergomax::detail {

using Matrix = std::vector<std::vector<double>>;

// Solves A x = b by partial-pivot elimination; throws InternalError if
// singular to working precision.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

struct PerronPair {
  double value = 0.0;          // spectral radius
  std::vector<double> right;   // L1-normalized, nonnegative
};

// Spectral radius and right Perron vector of a nonnegative irreducible
// matrix. Iterates the shifted, row-scaled matrix so periodic spectra
// still converge; the eigenvalue estimate itself never subtracts the shift.
PerronPair power_perron(const Matrix& m, double rel_tol, long long max_iter);

Matrix transpose(const Matrix& m);

// Stationary distribution of a row-stochastic irreducible matrix, by
// replacing one balance equation with the normalization constraint.
std::vector<double> stationary_of(const Matrix& p);

}  // namespace ergomax::detail
