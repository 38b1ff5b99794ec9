#pragma once

// The three-symbol model on {0,1,a} whose subshift holds exactly the points
// (10)^inf, (01)^inf and a(10)^inf, with phi(x) = x_0 and a free parameter a.
// Every minimax quantity of the library is computable in closed form here,
// which makes it the end-to-end regression model.

#include <vector>

#include "ergomax/averages.hpp"
#include "ergomax/symbolic.hpp"

namespace ergomax {

// Requires a outside {0, 1}; those values collapse symbols.
SubshiftSystem three_symbol_system(double a);

struct ThreeSymbolReport {
  double a = 0.0;
  int horizon = 0;

  struct PointSeries {
    std::string label;
    EventuallyPeriodicPoint point;
    std::vector<double> averages;  // S_n(phi)/n for n = 1..horizon
    TimeAverageProfile profile;
  };
  std::vector<PointSeries> points;  // (10)^inf, (01)^inf, a(10)^inf

  std::vector<double> horizon_sups;  // sup_x S_n/n for n = 1..horizon
  double alpha = 0.0;

  double inf_n_sup_x = 0.0;  // exact over all n, not truncated
  bool inf_n_sup_x_attained = false;
  double sup_x_inf_n = 0.0;  // over the three points
  double sup_sup = 0.0;      // max over points of sup_n
  double inf_inf = 0.0;      // min over points of inf_n

  bool identities_hold = false;  // alpha = inf_n_sup_x = sup_x_inf_n = 1/2
};

// Throws DomainError for a in {0,1}; throws InternalError when one of the
// structural identities fails (they hold for every admissible a).
ThreeSymbolReport three_symbol_report(double a, int horizon = 12,
                                      double tol = 1e-10);

}  // namespace ergomax
