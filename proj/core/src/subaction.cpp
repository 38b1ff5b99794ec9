#include "ergomax/subaction.hpp"

#include <algorithm>
#include <cmath>

#include "ergomax/averages.hpp"
#include "mean_cycle.hpp"

namespace ergomax {

SubActionSolution solve_subaction(const WeightedDigraph& graph) {
  detail::EdgeGraph g;
  g.n = graph.vertex_count();
  g.out.resize(g.n);
  for (auto [u, v] : graph.edges) {
    g.out[u].emplace_back(v, graph.vertex_weight[u]);
  }

  SubActionSolution sol;
  sol.dual_value = detail::karp_max_mean(g);
  sol.psi = detail::relax_potentials(g, sol.dual_value);
  sol.slack.reserve(graph.edges.size());
  for (auto [u, v] : graph.edges) {
    sol.slack.push_back(sol.dual_value -
                        (graph.vertex_weight[u] + sol.psi[u] - sol.psi[v]));
  }
  return sol;
}

DualityReport verify_duality(const WeightedDigraph& graph) {
  DualityReport report;
  report.alpha = alpha_karp(graph).value;
  SubActionSolution sol = solve_subaction(graph);
  report.dual_value = sol.dual_value;
  report.gap = std::abs(report.dual_value - report.alpha);
  double min_slack = *std::min_element(sol.slack.begin(), sol.slack.end());
  report.max_violation = std::max(0.0, -min_slack);
  return report;
}

}  // namespace ergomax
