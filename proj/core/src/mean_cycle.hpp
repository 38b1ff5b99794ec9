#pragma once

// Internal edge-weighted graph algorithms: strongly connected components,
// Karp's maximum cycle mean, Bellman-style potential relaxation, and
// extraction of a tight (critical) cycle. Not installed.

#include <utility>
#include <vector>

namespace ergomax::detail {

struct EdgeGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> out;  // (target, weight)
};

std::vector<std::vector<int>> strongly_connected_components(const EdgeGraph& g);

// Maximum mean cycle over all cycles of g. Requires at least one cycle.
double karp_max_mean(const EdgeGraph& g);

// Potentials psi with psi[v] >= psi[u] + w(u,v) - t for every edge, found by
// in-place sweeps in fixed vertex order from psi = 0. Requires t >= maximum
// cycle mean (no positive reduced cycles); throws InternalError otherwise.
// Normalized so that min psi = 0.
std::vector<double> relax_potentials(const EdgeGraph& g, double t);

// Lexicographically smallest cycle whose edges all satisfy
// t - (w(u,v) + psi[u] - psi[v]) <= eps, trying eps from 1e-12 up, and whose
// mean weight is within mean_tol of t. Canonical rotation (min vertex first).
std::vector<int> tight_cycle_lex(const EdgeGraph& g, double t,
                                 const std::vector<double>& psi,
                                 double mean_tol = 1e-10);

}  // namespace ergomax::detail
