#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately avoid the library's own code paths.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ergomax/symbolic.hpp"

namespace testutil {

inline ergomax::SubshiftSystem make_system(
    std::vector<std::string> symbols, std::vector<std::vector<int>> transition,
    int depth, double default_value,
    std::map<std::vector<int>, double> values = {}) {
  ergomax::SubshiftSystem system;
  system.symbols = std::move(symbols);
  system.transition = std::move(transition);
  system.potential.depth = depth;
  system.potential.default_value = default_value;
  system.potential.values = std::move(values);
  return system;
}

inline ergomax::SubshiftSystem full_shift(int n, double default_value = 0.0,
                                          std::map<std::vector<int>, double> values = {}) {
  std::vector<std::string> symbols;
  for (int i = 0; i < n; ++i) symbols.push_back(std::string(1, char('0' + i)));
  std::vector<std::vector<int>> transition(n, std::vector<int>(n, 1));
  return make_system(std::move(symbols), std::move(transition), 1, default_value,
                     std::move(values));
}

inline ergomax::SubshiftSystem golden_mean(int depth = 1, double default_value = 0.0,
                                           std::map<std::vector<int>, double> values = {}) {
  return make_system({"0", "1"}, {{1, 1}, {1, 0}}, depth, default_value,
                     std::move(values));
}

// Random system with a guaranteed nonempty subshift (adds a cycle on
// failure). Depth-2 instances stay on small alphabets so the recoded
// vertex count remains desk scale.
inline ergomax::SubshiftSystem random_system(std::mt19937& rng, int n_symbols,
                                             int depth, double density = 0.45) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<std::vector<int>> transition(n_symbols,
                                             std::vector<int>(n_symbols, 0));
    for (auto& row : transition) {
      for (int& e : row) e = unif(rng) < density ? 1 : 0;
    }
    if (attempt > 50) {
      for (int i = 0; i < n_symbols; ++i) transition[i][(i + 1) % n_symbols] = 1;
    }
    std::vector<std::string> symbols;
    for (int i = 0; i < n_symbols; ++i) {
      symbols.push_back(std::string(1, char('a' + i)));
    }
    ergomax::SubshiftSystem system =
        make_system(std::move(symbols), std::move(transition), depth, 0.0);
    try {
      ergomax::WeightedDigraph graph = ergomax::trim_and_recode(system);
      for (const auto& word : graph.vertex_words) {
        system.potential.values[word] = weight(rng);
      }
      return system;
    } catch (const ergomax::EmptySubshiftError&) {
      continue;
    }
  }
  throw std::logic_error("random_system failed to produce a nonempty subshift");
}

// Random irreducible depth-1 system: a Hamiltonian cycle plus random edges.
inline ergomax::SubshiftSystem random_irreducible_system(std::mt19937& rng,
                                                         int n_symbols,
                                                         double density = 0.4) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::vector<std::vector<int>> transition(n_symbols, std::vector<int>(n_symbols, 0));
  for (int i = 0; i < n_symbols; ++i) transition[i][(i + 1) % n_symbols] = 1;
  for (auto& row : transition) {
    for (int& e : row) {
      if (e == 0 && unif(rng) < density) e = 1;
    }
  }
  std::vector<std::string> symbols;
  for (int i = 0; i < n_symbols; ++i) {
    symbols.push_back(std::string(1, char('a' + i)));
  }
  std::map<std::vector<int>, double> values;
  for (int i = 0; i < n_symbols; ++i) values[{i}] = weight(rng);
  return make_system(std::move(symbols), std::move(transition), 1, 0.0,
                     std::move(values));
}

// Second, structurally different simple-cycle enumerator: filter all closed
// walks and deduplicate by canonical rotation.
inline std::vector<std::vector<int>> oracle_simple_cycles(
    const ergomax::WeightedDigraph& graph, int max_len) {
  std::set<std::vector<int>> found;
  const int n = graph.vertex_count();
  std::vector<int> walk;

  auto canonical = [](std::vector<int> cycle) {
    auto smallest = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), smallest, cycle.end());
    return cycle;
  };

  auto extend = [&](auto&& self, int start) -> void {
    int v = walk.back();
    if (static_cast<int>(walk.size()) <= max_len) {
      for (int w : graph.out[v]) {
        if (w == start) {
          std::vector<int> c = canonical(walk);
          bool simple = std::set<int>(c.begin(), c.end()).size() == c.size();
          if (simple) found.insert(c);
        }
        if (std::find(walk.begin(), walk.end(), w) == walk.end() &&
            static_cast<int>(walk.size()) < max_len) {
          walk.push_back(w);
          self(self, start);
          walk.pop_back();
        }
      }
    }
  };
  for (int s = 0; s < n; ++s) {
    walk = {s};
    extend(extend, s);
  }
  return {found.begin(), found.end()};
}

inline double oracle_best_cycle_mean(const ergomax::WeightedDigraph& graph) {
  double best = -1e300;
  for (const auto& cycle : oracle_simple_cycles(graph, graph.vertex_count())) {
    double sum = 0.0;
    for (int v : cycle) sum += graph.vertex_weight[v];
    best = std::max(best, sum / static_cast<double>(cycle.size()));
  }
  return best;
}

// Lower convex envelope of finite samples, O(n^2) by chord minimization.
// Infinite nodes (absent from xs/ys) simply do not constrain the envelope.
inline std::vector<double> oracle_lower_envelope(const std::vector<double>& xs,
                                                 const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  std::vector<double> env(n);
  for (std::size_t k = 0; k < n; ++k) {
    double best = ys[k];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (xs[i] <= xs[k] && xs[k] <= xs[j]) {
          double t = (xs[k] - xs[i]) / (xs[j] - xs[i]);
          best = std::min(best, ys[i] + t * (ys[j] - ys[i]));
        }
      }
    }
    env[k] = best;
  }
  return env;
}

}  // namespace testutil
