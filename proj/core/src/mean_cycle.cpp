#include "mean_cycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergomax/errors.hpp"

namespace ergomax::detail {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::vector<std::vector<int>> strongly_connected_components(const EdgeGraph& g) {
  // Iterative Tarjan.
  const int n = g.n;
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  std::vector<std::vector<int>> comps;
  int counter = 0;

  struct Frame {
    int v;
    std::size_t next_edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next_edge < g.out[f.v].size()) {
        int w = g.out[f.v][f.next_edge++].first;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) {
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        }
        if (low[v] == index[v]) {
          std::vector<int> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

double karp_max_mean(const EdgeGraph& g) {
  auto comps = strongly_connected_components(g);
  std::vector<int> comp_of(g.n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (int v : comps[c]) comp_of[v] = static_cast<int>(c);
  }

  double best = kNegInf;
  for (const auto& comp : comps) {
    const int m = static_cast<int>(comp.size());
    // Skip components without an internal edge (no cycle there).
    std::vector<int> local(g.n, -1);
    for (int i = 0; i < m; ++i) local[comp[i]] = i;
    bool has_edge = false;
    for (int v : comp) {
      for (auto [w, wt] : g.out[v]) {
        (void)wt;
        if (local[w] != -1) has_edge = true;
      }
    }
    if (!has_edge) continue;

    // D[k][v] = max weight of a k-edge walk from the component source to v.
    std::vector<std::vector<double>> d(m + 1, std::vector<double>(m, kNegInf));
    d[0][0] = 0.0;  // source = smallest vertex in the component
    for (int k = 1; k <= m; ++k) {
      for (int i = 0; i < m; ++i) {
        if (d[k - 1][i] == kNegInf) continue;
        for (auto [w, wt] : g.out[comp[i]]) {
          int j = local[w];
          if (j == -1) continue;
          d[k][j] = std::max(d[k][j], d[k - 1][i] + wt);
        }
      }
    }
    for (int j = 0; j < m; ++j) {
      if (d[m][j] == kNegInf) continue;
      double worst = std::numeric_limits<double>::infinity();
      for (int k = 0; k < m; ++k) {
        if (d[k][j] == kNegInf) continue;
        worst = std::min(worst, (d[m][j] - d[k][j]) / static_cast<double>(m - k));
      }
      best = std::max(best, worst);
    }
  }
  if (best == kNegInf) {
    throw InternalError("karp_max_mean: graph contains no cycle");
  }
  return best;
}

std::vector<double> relax_potentials(const EdgeGraph& g, double t) {
  const int n = g.n;
  std::vector<std::vector<std::pair<int, double>>> in(n);
  long long edge_count = 0;
  for (int u = 0; u < n; ++u) {
    for (auto [v, w] : g.out[u]) {
      in[v].emplace_back(u, w);
      ++edge_count;
    }
  }

  std::vector<double> psi(n, 0.0);
  const long long max_rounds =
      std::min<long long>(std::max<long long>(n + 2, n * edge_count), 200000);
  bool stable = false;
  for (long long round = 0; round < max_rounds && !stable; ++round) {
    stable = true;
    for (int v = 0; v < n; ++v) {
      for (auto [u, w] : in[v]) {
        double cand = psi[u] + (w - t);
        if (cand > psi[v] + 1e-12) {
          psi[v] = cand;
          stable = false;
        }
      }
    }
  }
  if (!stable) {
    throw InternalError("potential relaxation did not stabilize; "
                        "positive reduced cycle present");
  }
  double lo = *std::min_element(psi.begin(), psi.end());
  for (double& p : psi) p -= lo;
  return psi;
}

namespace {

// First cycle, in lexicographic path order, inside the given sub-adjacency.
// Returns empty if none found within the node budget.
std::vector<int> lex_first_cycle(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<char> on_path(n, 0);
  std::vector<int> path;
  long long budget = 500000;

  auto dfs = [&](auto&& self, int start, int v) -> bool {
    if (--budget < 0) return false;
    for (int w : adj[v]) {
      if (w == start) return true;
      if (w > start && !on_path[w]) {
        on_path[w] = 1;
        path.push_back(w);
        if (self(self, start, w)) return true;
        path.pop_back();
        on_path[w] = 0;
      }
    }
    return false;
  };

  for (int s = 0; s < n && budget > 0; ++s) {
    path = {s};
    on_path[s] = 1;
    if (dfs(dfs, s, s)) return path;
    on_path[s] = 0;
  }
  return {};
}

}  // namespace

std::vector<int> tight_cycle_lex(const EdgeGraph& g, double t,
                                 const std::vector<double>& psi,
                                 double mean_tol) {
  for (double eps = 1e-12; eps <= 1e-6; eps *= 10.0) {
    std::vector<std::vector<int>> tight(g.n);
    for (int u = 0; u < g.n; ++u) {
      for (auto [v, w] : g.out[u]) {
        double slack = t - (w + psi[u] - psi[v]);
        if (slack <= eps) tight[u].push_back(v);
      }
    }
    for (auto& lst : tight) std::sort(lst.begin(), lst.end());
    std::vector<int> cycle = lex_first_cycle(tight);
    if (cycle.empty()) continue;

    double sum = 0.0;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int u = cycle[i];
      int v = cycle[(i + 1) % cycle.size()];
      for (auto [w, wt] : g.out[u]) {
        if (w == v) {
          sum += wt;
          break;
        }
      }
    }
    if (std::abs(sum / static_cast<double>(cycle.size()) - t) <= mean_tol) {
      return cycle;
    }
  }
  throw InternalError("no tight cycle found at the computed optimum");
}

}  // namespace ergomax::detail
