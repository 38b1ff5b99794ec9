#include "ergomax/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <json.hpp>

namespace ergomax {

ExtReal::ExtReal(double v) : v_(v) {
  if (!std::isfinite(v)) {
    throw DomainError("ExtReal: finite constructor given a non-finite value");
  }
}

ExtReal ExtReal::infinity() {
  ExtReal r;
  r.finite_ = false;
  r.v_ = std::numeric_limits<double>::infinity();
  return r;
}

double ExtReal::value() const {
  if (!finite_) throw InternalError("ExtReal: value() on +infinity");
  return v_;
}

ExtReal ExtReal::operator+(const ExtReal& o) const {
  if (!finite_ || !o.finite_) return infinity();
  return ExtReal(v_ + o.v_);
}

bool ExtReal::operator==(const ExtReal& o) const {
  if (finite_ != o.finite_) return false;
  return !finite_ || v_ == o.v_;
}

bool ExtReal::operator<(const ExtReal& o) const {
  if (!finite_) return false;
  if (!o.finite_) return true;
  return v_ < o.v_;
}

std::size_t GridConvexFunction::node_count() const {
  std::size_t total = 1;
  for (const auto& g : grids) total *= g.size();
  return total;
}

void GridConvexFunction::validate() const {
  if (dim() != 1 && dim() != 2) {
    throw DomainError("grid functions must have dimension 1 or 2");
  }
  for (const auto& g : grids) {
    if (g.size() < 2) throw DomainError("grids need at least 2 nodes");
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      if (!(g[i] < g[i + 1])) throw DomainError("grids must strictly increase");
    }
  }
  if (values.size() != node_count()) {
    throw DomainError("value count does not match the grid");
  }
  bool any_finite = false;
  for (const auto& v : values) any_finite = any_finite || v.finite();
  if (!any_finite) throw DomainError("improper function: no finite value");
}

GridConvexFunction parse_grid_function(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed grid function: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("grids") || !doc.contains("values")) {
    throw ParseError("grid function needs 'grids' and 'values'");
  }
  GridConvexFunction f;
  for (const auto& g : doc["grids"]) {
    f.grids.push_back(g.get<std::vector<double>>());
  }
  for (const auto& v : doc["values"]) {
    if (v.is_string()) {
      if (v.get<std::string>() != "inf") {
        throw ParseError("value strings must be \"inf\"");
      }
      f.values.push_back(ExtReal::infinity());
    } else if (v.is_number()) {
      f.values.push_back(ExtReal(v.get<double>()));
    } else {
      throw ParseError("values must be numbers or \"inf\"");
    }
  }
  try {
    f.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return f;
}

namespace {

struct Sample {
  double x;
  double y;
};

// Lower convex hull of finite sample points (x strictly increasing).
std::vector<Sample> lower_hull(const std::vector<Sample>& pts) {
  std::vector<Sample> hull;
  for (const Sample& p : pts) {
    while (hull.size() >= 2) {
      const Sample& a = hull[hull.size() - 2];
      const Sample& b = hull[hull.size() - 1];
      // Drop b when it lies on or above segment a-p.
      if ((b.y - a.y) * (p.x - a.x) >= (p.y - a.y) * (b.x - a.x)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return hull;
}

// 1-d conjugate values on an ascending dual grid via the monotone-argmax
// scan over the lower hull. Empty input yields an empty optional per node.
std::vector<std::optional<double>> conj1d_fast(const std::vector<Sample>& pts,
                                               const std::vector<double>& dual) {
  std::vector<std::optional<double>> out(dual.size());
  if (pts.empty()) return out;
  std::vector<Sample> hull = lower_hull(pts);
  std::size_t idx = 0;
  for (std::size_t j = 0; j < dual.size(); ++j) {
    double y = dual[j];
    while (idx + 1 < hull.size() &&
           hull[idx + 1].x * y - hull[idx + 1].y >=
               hull[idx].x * y - hull[idx].y) {
      ++idx;
    }
    out[j] = hull[idx].x * y - hull[idx].y;
  }
  return out;
}

std::vector<std::optional<double>> conj1d_brute(const std::vector<Sample>& pts,
                                                const std::vector<double>& dual) {
  std::vector<std::optional<double>> out(dual.size());
  for (std::size_t j = 0; j < dual.size(); ++j) {
    std::optional<double> best;
    for (const Sample& p : pts) {
      double cand = p.x * dual[j] - p.y;
      if (!best || cand > *best) best = cand;
    }
    out[j] = best;
  }
  return out;
}

using Conj1d = std::vector<std::optional<double>> (*)(const std::vector<Sample>&,
                                                      const std::vector<double>&);

GridConvexFunction conjugate_impl(const GridConvexFunction& f,
                                  const std::vector<std::vector<double>>& dual_grids,
                                  Conj1d conj1d) {
  f.validate();
  if (static_cast<int>(dual_grids.size()) != f.dim()) {
    throw DomainError("dual grid dimension mismatch");
  }
  GridConvexFunction out;
  out.grids = dual_grids;

  if (f.dim() == 1) {
    std::vector<Sample> pts;
    for (std::size_t i = 0; i < f.grids[0].size(); ++i) {
      if (f.values[i].finite()) pts.push_back({f.grids[0][i], f.values[i].value()});
    }
    auto vals = conj1d(pts, dual_grids[0]);
    for (const auto& v : vals) out.values.push_back(ExtReal(*v));
    out.validate();
    return out;
  }

  // dim 2: h(x1, y2) = sup_{x2} (x2 y2 - f(x1, x2)), then conjugate the
  // map x1 -> -h(x1, y2) for each y2.
  const auto& xs1 = f.grids[0];
  const auto& xs2 = f.grids[1];
  const auto& ys1 = dual_grids[0];
  const auto& ys2 = dual_grids[1];
  std::vector<std::vector<std::optional<double>>> h(xs1.size());
  for (std::size_t i1 = 0; i1 < xs1.size(); ++i1) {
    std::vector<Sample> row;
    for (std::size_t i2 = 0; i2 < xs2.size(); ++i2) {
      const ExtReal& v = f.values[i1 * xs2.size() + i2];
      if (v.finite()) row.push_back({xs2[i2], v.value()});
    }
    h[i1] = conj1d(row, ys2);
  }
  out.values.assign(ys1.size() * ys2.size(), ExtReal(0.0));
  for (std::size_t j2 = 0; j2 < ys2.size(); ++j2) {
    std::vector<Sample> col;
    for (std::size_t i1 = 0; i1 < xs1.size(); ++i1) {
      if (h[i1][j2]) col.push_back({xs1[i1], -*h[i1][j2]});
    }
    auto vals = conj1d(col, ys1);
    for (std::size_t j1 = 0; j1 < ys1.size(); ++j1) {
      out.values[j1 * ys2.size() + j2] = ExtReal(*vals[j1]);
    }
  }
  out.validate();
  return out;
}

}  // namespace

GridConvexFunction conjugate(const GridConvexFunction& f,
                             const std::vector<std::vector<double>>& dual_grids) {
  return conjugate_impl(f, dual_grids, conj1d_fast);
}

GridConvexFunction conjugate_bruteforce(
    const GridConvexFunction& f,
    const std::vector<std::vector<double>>& dual_grids) {
  return conjugate_impl(f, dual_grids, conj1d_brute);
}

namespace {

// Dual grid rich enough to support every hull vertex: adjacent hull slopes
// plus steep outward slopes for the endpoints.
std::vector<double> slope_grid(const std::vector<Sample>& pts) {
  std::vector<Sample> hull = lower_hull(pts);
  std::set<double> slopes;
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    slopes.insert((hull[i + 1].y - hull[i].y) / (hull[i + 1].x - hull[i].x));
  }
  double span = 1.0;
  for (double s : slopes) span = std::max(span, std::abs(s));
  slopes.insert(span + 1.0);
  slopes.insert(-(span + 1.0));
  return {slopes.begin(), slopes.end()};
}

}  // namespace

BiconjugateReport biconjugate_check(const GridConvexFunction& f) {
  f.validate();
  std::vector<std::vector<double>> duals;
  for (int d = 0; d < f.dim(); ++d) {
    // Per-axis slopes over the finite nodes, aggregated across slices.
    std::set<double> axis;
    auto add_slice = [&](const std::vector<Sample>& pts) {
      for (double s : slope_grid(pts)) axis.insert(s);
    };
    if (f.dim() == 1) {
      std::vector<Sample> pts;
      for (std::size_t i = 0; i < f.grids[0].size(); ++i) {
        if (f.values[i].finite()) pts.push_back({f.grids[0][i], f.values[i].value()});
      }
      add_slice(pts);
    } else {
      const auto& xs1 = f.grids[0];
      const auto& xs2 = f.grids[1];
      for (std::size_t other = 0; other < (d == 0 ? xs2.size() : xs1.size());
           ++other) {
        std::vector<Sample> pts;
        for (std::size_t i = 0; i < (d == 0 ? xs1.size() : xs2.size()); ++i) {
          std::size_t flat = d == 0 ? i * xs2.size() + other : other * xs2.size() + i;
          if (f.values[flat].finite()) {
            pts.push_back({f.grids[d][i], f.values[flat].value()});
          }
        }
        if (pts.size() >= 1) add_slice(pts);
      }
    }
    if (axis.size() < 2) {
      axis.insert(0.0);
      axis.insert(1.0);
    }
    duals.emplace_back(axis.begin(), axis.end());
  }

  BiconjugateReport report{conjugate(conjugate(f, duals), f.grids), {}, 0.0, 0.0};
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const ExtReal& orig = f.values[i];
    double bc = report.biconjugate.values[i].value();
    if (orig.finite()) {
      report.max_excess = std::max(report.max_excess, bc - orig.value());
      report.max_deviation = std::max(report.max_deviation, std::abs(bc - orig.value()));
    }
  }

  if (f.dim() == 1) {
    // Discretely convex iff every node agrees with the lower envelope
    // (infinite nodes must lie outside the finite hull's span).
    std::vector<Sample> pts;
    for (std::size_t i = 0; i < f.grids[0].size(); ++i) {
      if (f.values[i].finite()) pts.push_back({f.grids[0][i], f.values[i].value()});
    }
    std::vector<Sample> hull = lower_hull(pts);
    bool convex = true;
    for (std::size_t i = 0; i < f.grids[0].size(); ++i) {
      double x = f.grids[0][i];
      bool inside = x >= hull.front().x && x <= hull.back().x;
      if (!f.values[i].finite()) {
        convex = convex && !inside;
        continue;
      }
      if (!inside) {
        convex = false;  // finite value beyond the finite hull cannot happen
        continue;
      }
      std::size_t seg = 0;
      while (seg + 2 < hull.size() && hull[seg + 1].x < x) ++seg;
      double t = (x - hull[seg].x) / (hull[seg + 1].x - hull[seg].x);
      double env = hull.size() == 1
                       ? hull[0].y
                       : hull[seg].y + t * (hull[seg + 1].y - hull[seg].y);
      convex = convex && f.values[i].value() <= env + 1e-12;
    }
    report.convex_input = convex;
  }
  return report;
}

FenchelRockafellarReport fr_duality_gap(
    const GridConvexFunction& f, const GridConvexFunction& g,
    const std::vector<std::vector<double>>& dual_grids) {
  f.validate();
  g.validate();
  if (f.grids != g.grids) {
    throw DomainError("fr_duality_gap requires a common grid");
  }

  FenchelRockafellarReport report;
  ExtReal primal = ExtReal::infinity();
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    ExtReal sum = f.values[i] + g.values[i];
    if (sum < primal) primal = sum;
  }
  if (!primal.finite()) {
    throw DomainError("f+g is improper on the common grid");
  }
  report.primal = primal.value();

  // Qualification proxy for "continuous at a common finite point": a node
  // where both are finite and one is finite on all axis-neighbors.
  auto neighbors_finite = [&](const GridConvexFunction& fn, std::size_t flat) {
    if (fn.dim() == 1) {
      std::size_t n = fn.grids[0].size();
      std::size_t i = flat;
      return i > 0 && i + 1 < n && fn.values[i - 1].finite() &&
             fn.values[i + 1].finite();
    }
    std::size_t n2 = fn.grids[1].size();
    std::size_t i1 = flat / n2, i2 = flat % n2;
    if (i1 == 0 || i1 + 1 >= fn.grids[0].size() || i2 == 0 || i2 + 1 >= n2) {
      return false;
    }
    return fn.values[flat - n2].finite() && fn.values[flat + n2].finite() &&
           fn.values[flat - 1].finite() && fn.values[flat + 1].finite();
  };
  for (std::size_t i = 0; i < f.values.size() && !report.qualified; ++i) {
    if (f.values[i].finite() && g.values[i].finite() &&
        (neighbors_finite(f, i) || neighbors_finite(g, i))) {
      report.qualified = true;
    }
  }

  GridConvexFunction f_star = conjugate(f, dual_grids);
  std::vector<std::vector<double>> negated;
  for (const auto& grid : dual_grids) {
    std::vector<double> neg(grid.rbegin(), grid.rend());
    for (double& y : neg) y = -y;
    negated.push_back(std::move(neg));
  }
  GridConvexFunction g_star_neg = conjugate(g, negated);

  // Map y (in dual grid order) to -y's position in the negated grids.
  auto flipped_flat = [&](std::size_t flat) {
    if (dual_grids.size() == 1) return dual_grids[0].size() - 1 - flat;
    std::size_t n2 = dual_grids[1].size();
    std::size_t j1 = flat / n2, j2 = flat % n2;
    return (dual_grids[0].size() - 1 - j1) * n2 + (n2 - 1 - j2);
  };
  report.dual = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < f_star.values.size(); ++j) {
    double cand = -f_star.values[j].value() -
                  g_star_neg.values[flipped_flat(j)].value();
    report.dual = std::max(report.dual, cand);
  }
  report.gap = report.primal - report.dual;

  auto lipschitz = [](const GridConvexFunction& fn) {
    double worst = 0.0;
    if (fn.dim() == 1) {
      for (std::size_t i = 0; i + 1 < fn.grids[0].size(); ++i) {
        if (fn.values[i].finite() && fn.values[i + 1].finite()) {
          worst = std::max(worst, std::abs(fn.values[i + 1].value() -
                                           fn.values[i].value()) /
                                      (fn.grids[0][i + 1] - fn.grids[0][i]));
        }
      }
      return worst;
    }
    std::size_t n2 = fn.grids[1].size();
    for (std::size_t i1 = 0; i1 < fn.grids[0].size(); ++i1) {
      for (std::size_t i2 = 0; i2 < n2; ++i2) {
        std::size_t flat = i1 * n2 + i2;
        if (!fn.values[flat].finite()) continue;
        if (i1 + 1 < fn.grids[0].size() && fn.values[flat + n2].finite()) {
          worst = std::max(worst, std::abs(fn.values[flat + n2].value() -
                                           fn.values[flat].value()) /
                                      (fn.grids[0][i1 + 1] - fn.grids[0][i1]));
        }
        if (i2 + 1 < n2 && fn.values[flat + 1].finite()) {
          worst = std::max(worst, std::abs(fn.values[flat + 1].value() -
                                           fn.values[flat].value()) /
                                      (fn.grids[1][i2 + 1] - fn.grids[1][i2]));
        }
      }
    }
    return worst;
  };
  auto max_spacing = [](const std::vector<std::vector<double>>& grids) {
    double h = 0.0;
    for (const auto& g : grids) {
      for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        h = std::max(h, g[i + 1] - g[i]);
      }
    }
    return h;
  };
  double x_max = 0.0;
  for (const auto& grid : f.grids) {
    for (double x : grid) x_max = std::max(x_max, std::abs(x));
  }
  report.tolerance = max_spacing(f.grids) * (lipschitz(f) + lipschitz(g)) +
                     max_spacing(dual_grids) * x_max + 1e-9;
  return report;
}

}  // namespace ergomax
