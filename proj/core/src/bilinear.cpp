#include "ergomax/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "linalg.hpp"

namespace ergomax {

void BilinearGame::validate() const {
  if (strategies.empty()) throw DomainError("strategy set must be nonempty");
  if (simplex_dim() < 1) throw DomainError("simplex_dim must be >= 1");
  for (const auto& s : strategies) {
    if (static_cast<int>(s.size()) != simplex_dim()) {
      throw DomainError("strategy vectors must have length simplex_dim");
    }
  }
}

BilinearGame parse_bilinear_game(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed game document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("strategies") ||
      !doc.contains("concave_part")) {
    throw ParseError("game document needs 'strategies' and 'concave_part'");
  }
  BilinearGame game;
  for (const auto& s : doc["strategies"]) {
    game.strategies.push_back(s.get<std::vector<double>>());
  }
  game.concave_part = doc["concave_part"].get<std::vector<double>>();
  try {
    game.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return game;
}

namespace {

// Payoff with the concave part folded in: B[i][j] = xi_j[i] + a[i].
detail::Matrix payoff(const BilinearGame& game) {
  const int d = game.simplex_dim();
  const int m = static_cast<int>(game.strategies.size());
  detail::Matrix b(d, std::vector<double>(m, 0.0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < m; ++j) {
      b[i][j] = game.strategies[j][i] + game.concave_part[i];
    }
  }
  return b;
}

double min_column_payoff(const detail::Matrix& b, const std::vector<double>& mu) {
  const int d = static_cast<int>(b.size());
  const int m = static_cast<int>(b[0].size());
  double worst = std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    double v = 0.0;
    for (int i = 0; i < d; ++i) v += mu[i] * b[i][j];
    worst = std::min(worst, v);
  }
  return worst;
}

double max_row_payoff(const detail::Matrix& b, const std::vector<double>& t) {
  const int d = static_cast<int>(b.size());
  const int m = static_cast<int>(b[0].size());
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) {
    double v = 0.0;
    for (int j = 0; j < m; ++j) v += t[j] * b[i][j];
    worst = std::max(worst, v);
  }
  return worst;
}

void subsets_of_size(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> pick(k);
  auto rec = [&](auto&& self, int start, int depth) -> void {
    if (depth == k) {
      fn(pick);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
}

// Basic feasible candidates of max_{mu in simplex} min_j (mu^T B)_j:
// equalized supports I with active columns J, |I| = |J|.
void best_equalized(const detail::Matrix& b, bool transpose_roles,
                    double& best, std::vector<double>& best_point) {
  const int d = static_cast<int>(b.size());
  const int m = static_cast<int>(b[0].size());
  const int own = transpose_roles ? m : d;      // dimension of the variable
  const int other = transpose_roles ? d : m;    // constraints to equalize
  const int max_support = std::min(own, transpose_roles ? d : own);

  auto entry = [&](int var, int constraint) {
    return transpose_roles ? b[constraint][var] : b[var][constraint];
  };

  // Single-vertex candidates.
  for (int i = 0; i < own; ++i) {
    std::vector<double> point(own, 0.0);
    point[i] = 1.0;
    double value = transpose_roles ? -max_row_payoff(b, point)
                                   : min_column_payoff(b, point);
    if (value > best) {
      best = value;
      best_point = point;
    }
  }

  for (int k = 2; k <= max_support; ++k) {
    subsets_of_size(own, k, [&](const std::vector<int>& support) {
      subsets_of_size(other, k, [&](const std::vector<int>& active) {
        // Unknowns: k weights and the equalized value z.
        detail::Matrix a(k + 1, std::vector<double>(k + 1, 0.0));
        std::vector<double> rhs(k + 1, 0.0);
        for (int r = 0; r < k; ++r) {
          for (int c = 0; c < k; ++c) a[r][c] = entry(support[c], active[r]);
          a[r][k] = -1.0;
        }
        for (int c = 0; c < k; ++c) a[k][c] = 1.0;
        rhs[k] = 1.0;
        std::vector<double> sol;
        try {
          sol = detail::solve_linear(a, rhs);
        } catch (const InternalError&) {
          return;  // degenerate support, skip
        }
        std::vector<double> point(own, 0.0);
        for (int c = 0; c < k; ++c) {
          if (sol[c] < -1e-9) return;
          point[support[c]] = std::max(sol[c], 0.0);
        }
        double total = std::accumulate(point.begin(), point.end(), 0.0);
        for (double& p : point) p /= total;
        double value = transpose_roles ? -max_row_payoff(b, point)
                                       : min_column_payoff(b, point);
        if (value > best) {
          best = value;
          best_point = point;
        }
      });
    });
  }
}

std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> sorted = v;
  std::sort(sorted.rbegin(), sorted.rend());
  double cumulative = 0.0, theta = 0.0;
  int rho = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - candidate > 0) {
      rho = static_cast<int>(i + 1);
      theta = candidate;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

}  // namespace

BilinearReport bilinear_minimax(const BilinearGame& game) {
  game.validate();
  const detail::Matrix b = payoff(game);
  const int d = game.simplex_dim();
  const int m = static_cast<int>(game.strategies.size());

  BilinearReport report;
  if (d <= 3 && m <= 64) {
    report.exact = true;
    double best_mu = -std::numeric_limits<double>::infinity();
    std::vector<double> mu;
    best_equalized(b, false, best_mu, mu);
    report.sup_inf = best_mu;
    report.optimal_mu = mu;

    double best_t = -std::numeric_limits<double>::infinity();
    std::vector<double> t;
    best_equalized(b, true, best_t, t);
    report.inf_sup = -best_t;
    report.optimal_t = t;
  } else {
    // Certified bounds: any feasible mu lower-bounds the value, any feasible
    // t upper-bounds it. No equality claim outside the exact regime.
    std::vector<double> mu(d, 1.0 / d), t(m, 1.0 / m);
    double lb = min_column_payoff(b, mu), ub = max_row_payoff(b, t);
    std::vector<double> best_mu = mu, best_t = t;
    double scale = 0.0;
    for (const auto& row : b) {
      for (double v : row) scale = std::max(scale, std::abs(v));
    }
    if (scale == 0.0) scale = 1.0;
    const int iters = 20000;
    for (int it = 1; it <= iters; ++it) {
      double step = scale / std::sqrt(static_cast<double>(it));
      // Ascent step for mu along the active (minimizing) column.
      int jstar = 0;
      double worst = std::numeric_limits<double>::infinity();
      for (int j = 0; j < m; ++j) {
        double v = 0.0;
        for (int i = 0; i < d; ++i) v += mu[i] * b[i][j];
        if (v < worst) {
          worst = v;
          jstar = j;
        }
      }
      for (int i = 0; i < d; ++i) mu[i] += step * b[i][jstar];
      mu = project_simplex(std::move(mu));
      if (double v = min_column_payoff(b, mu); v > lb) {
        lb = v;
        best_mu = mu;
      }
      // Descent step for t along the active (maximizing) row.
      int istar = 0;
      double peak = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < d; ++i) {
        double v = 0.0;
        for (int j = 0; j < m; ++j) v += t[j] * b[i][j];
        if (v > peak) {
          peak = v;
          istar = i;
        }
      }
      for (int j = 0; j < m; ++j) t[j] -= step * b[istar][j];
      t = project_simplex(std::move(t));
      if (double v = max_row_payoff(b, t); v < ub) {
        ub = v;
        best_t = t;
      }
    }
    report.sup_inf = lb;
    report.inf_sup = ub;
    report.optimal_mu = best_mu;
    report.optimal_t = best_t;
  }
  report.gap = report.inf_sup - report.sup_inf;
  return report;
}

}  // namespace ergomax
