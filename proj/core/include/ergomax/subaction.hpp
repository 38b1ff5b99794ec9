#pragma once

// Coboundary dual of the maximum ergodic average: minimize t subject to
// weight(u) + psi(u) - psi(v) <= t on every edge. The optimal t equals
// alpha and an optimal psi is a sub-action.

#include <vector>

#include "ergomax/symbolic.hpp"

namespace ergomax {

struct SubActionSolution {
  double dual_value = 0.0;
  std::vector<double> psi;    // per vertex, min-normalized to 0
  std::vector<double> slack;  // per edge (graph.edges order), >= -1e-9
};

// Sets t to the Karp value and computes psi as longest-path potentials for
// the reduced weights weight(u) - t via Bellman-style relaxation in fixed
// vertex order. Non-convergence is reported, never silently accepted.
SubActionSolution solve_subaction(const WeightedDigraph& graph);

struct DualityReport {
  double alpha = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;            // |dual_value - alpha|
  double max_violation = 0.0;  // max(0, -min slack)
};

DualityReport verify_duality(const WeightedDigraph& graph);

}  // namespace ergomax
