#include "linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ergomax/errors.hpp"

namespace ergomax::detail {

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
  const int n = static_cast<int>(a.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-14) {
      throw InternalError("solve_linear: singular system");
    }
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = col + 1; r < n; ++r) {
      double factor = a[r][col] / a[col][col];
      if (factor == 0.0) continue;
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      b[r] -= factor * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

PerronPair power_perron(const Matrix& m, double rel_tol, long long max_iter) {
  const int n = static_cast<int>(m.size());
  double scale = 0.0;
  for (const auto& row : m) {
    double s = 0.0;
    for (double v : row) s += v;
    scale = std::max(scale, s);
  }
  if (scale <= 0.0) throw InternalError("power_perron: zero matrix");

  std::vector<double> v(n, 1.0 / n), w(n);
  double lam = 0.0;
  for (long long it = 0; it < max_iter; ++it) {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += m[i][j] * v[j];
      w[i] = s / scale;
      total += w[i];
    }
    lam = total;  // v is L1-normalized and nonnegative
    double resid = 0.0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::abs(w[i] - lam * v[i]));
    // Shifted step keeps the iteration convergent when the peripheral
    // spectrum is periodic (e.g. pure cycles).
    double shifted = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] += v[i];
      shifted += w[i];
    }
    for (int i = 0; i < n; ++i) v[i] = w[i] / shifted;
    if (it > 0 && resid <= rel_tol * std::max(lam, 1e-300)) {
      return {lam * scale, v};
    }
  }
  throw InternalError("power_perron: no convergence within iteration budget");
}

Matrix transpose(const Matrix& m) {
  const int n = static_cast<int>(m.size());
  Matrix t(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t[j][i] = m[i][j];
  }
  return t;
}

std::vector<double> stationary_of(const Matrix& p) {
  const int n = static_cast<int>(p.size());
  Matrix a(n, std::vector<double>(n, 0.0));
  std::vector<double> b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = p[j][i] - (i == j ? 1.0 : 0.0);
  }
  for (int j = 0; j < n; ++j) a[n - 1][j] = 1.0;
  b[n - 1] = 1.0;
  std::vector<double> pi = solve_linear(std::move(a), std::move(b));
  double total = 0.0;
  for (double x : pi) total += x;
  for (double& x : pi) x /= total;
  return pi;
}

}  // namespace ergomax::detail
