#pragma once

// Bilinear minimax over a strategy polytope and a probability simplex:
// both optimization orders of sup_mu inf_xi { <xi,mu> + A(mu) } with A the
// affine extension of the concave part's vertex values.

#include <string>
#include <vector>

#include "ergomax/errors.hpp"

namespace ergomax {

struct BilinearGame {
  std::vector<std::vector<double>> strategies;  // vertices of S, each length d
  std::vector<double> concave_part;             // A at the d simplex vertices

  int simplex_dim() const { return static_cast<int>(concave_part.size()); }
  void validate() const;
};

// JSON: { "strategies": [[...], ...], "concave_part": [...] }.
BilinearGame parse_bilinear_game(const std::string& text);

struct BilinearReport {
  double sup_inf = 0.0;
  double inf_sup = 0.0;
  double gap = 0.0;                // inf_sup - sup_inf, >= -1e-12
  std::vector<double> optimal_mu;  // simplex certificate for sup_inf
  std::vector<double> optimal_t;   // hull coefficients certifying inf_sup
  bool exact = false;              // support enumeration vs certified bounds
};

// Exact support enumeration when the simplex dimension is <= 3 (and the
// strategy list is small); otherwise certified primal/dual bounds from
// projected subgradient iterations, with no equality claim.
BilinearReport bilinear_minimax(const BilinearGame& game);

}  // namespace ergomax
