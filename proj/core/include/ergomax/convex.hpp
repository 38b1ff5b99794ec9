#pragma once

// Finite-dimensional Legendre-Fenchel machinery on sampled grids:
// conjugates (quadratic-time brute force and a linear-time lower-envelope
// pass that must agree), Fenchel-Moreau biconjugation, and the
// Fenchel-Rockafellar primal/dual gap.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ergomax/errors.hpp"

namespace ergomax {

// Extended real in [-inf excluded, +inf]: +infinity encodes indicator
// constraints. Addition lets +inf dominate; inf - inf is trapped.
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v);  // NOLINT: implicit by design, finite values only
  static ExtReal infinity();

  bool finite() const { return finite_; }
  double value() const;  // throws InternalError when infinite

  ExtReal operator+(const ExtReal& o) const;
  bool operator==(const ExtReal& o) const;
  bool operator<(const ExtReal& o) const;

 private:
  double v_ = 0.0;
  bool finite_ = true;
};

// Extended-real function sampled on a product grid of dimension 1 or 2,
// stored row-major. Proper: at least one finite value.
struct GridConvexFunction {
  std::vector<std::vector<double>> grids;  // strictly increasing, >= 2 nodes
  std::vector<ExtReal> values;

  int dim() const { return static_cast<int>(grids.size()); }
  std::size_t node_count() const;
  void validate() const;  // throws DomainError
};

// JSON: { "grids": [[...], ...], "values": [0.5, "inf", ...] }.
GridConvexFunction parse_grid_function(const std::string& text);

// f*(y) = max over finite grid nodes of <x,y> - f(x). The default path is
// the factored lower-envelope scan; the brute-force path is the independent
// oracle. Both are exact over the sampled grid and must agree to 1e-12.
GridConvexFunction conjugate(const GridConvexFunction& f,
                             const std::vector<std::vector<double>>& dual_grids);
GridConvexFunction conjugate_bruteforce(
    const GridConvexFunction& f,
    const std::vector<std::vector<double>>& dual_grids);

struct BiconjugateReport {
  GridConvexFunction biconjugate;       // back on the original grids
  std::optional<bool> convex_input;     // set for 1-d inputs
  double max_excess = 0.0;              // max over nodes of f** - f, <= ~0
  double max_deviation = 0.0;           // max |f** - f| over finite f nodes
};

// Conjugates twice through a slope-complete dual grid, so convex inputs are
// recovered exactly and nonconvex inputs drop to their convex hull.
BiconjugateReport biconjugate_check(const GridConvexFunction& f);

struct FenchelRockafellarReport {
  double primal = 0.0;     // min over the common grid of f+g
  double dual = 0.0;       // max over the dual grid of -f*(y)-g*(-y)
  double gap = 0.0;        // primal - dual, >= -1e-12 by weak duality
  bool qualified = false;  // a common finite node interior-finite for f or g
  double tolerance = 0.0;  // declared: h_p(Lf+Lg) + h_d*max|x| + 1e-9
};

FenchelRockafellarReport fr_duality_gap(
    const GridConvexFunction& f, const GridConvexFunction& g,
    const std::vector<std::vector<double>>& dual_grids);

}  // namespace ergomax
