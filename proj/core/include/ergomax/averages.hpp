#pragma once

// The maximum ergodic average alpha(phi) and the minimax quantities around
// it: horizon suprema sup_x S_n(phi)/n, exact pointwise infima over n for
// eventually periodic points, and diagnostics separating alpha from
// sup-sup / inf-inf.

#include <optional>
#include <utility>
#include <vector>

#include "ergomax/symbolic.hpp"

namespace ergomax {

struct AlphaResult {
  enum class Method { karp, brute_force };
  double value = 0.0;
  std::vector<int> witness_cycle;  // canonical rotation, mean == value
  Method method = Method::karp;
};

// Maximum mean cycle of the recoded graph, i.e. the maximum of the integral
// of phi over invariant measures. Karp's recurrence per strongly connected
// component; witness extracted from the zero-slack subgraph of the optimal
// potentials, lexicographically smallest.
AlphaResult alpha_karp(const WeightedDigraph& graph);

// Independent route: exhaustive simple-cycle enumeration. Guarded to
// graphs with at most 12 vertices.
AlphaResult alpha_bruteforce(const WeightedDigraph& graph);

// sup over points of S_n(phi)/n, computed as the best n-vertex walk weight
// divided by n. Trimming makes every finite walk extendable, so the walk
// optimum equals the supremum over the subshift.
double horizon_sup(const WeightedDigraph& graph, int n);

struct HorizonTable {
  std::vector<std::pair<int, double>> rows;  // (n, sup_value), n = 1..N
  double running_inf = 0.0;
  double error_bound = 0.0;  // |V| * (w_max - alpha) / N
};

HorizonTable horizon_table(const WeightedDigraph& graph, int big_n);

// inf/sup over n of the partial averages of an eventually periodic weight
// sequence, exact via per-residue monotonicity of (K + qB)/(n0 + r + qp).
// An absent attainment index means the infimum (supremum) is the unattained
// limit B/p.
struct SequenceProfile {
  double inf_value = 0.0;
  std::optional<long long> inf_attained_at;
  double sup_value = 0.0;
  std::optional<long long> sup_attained_at;
  double mean_limit = 0.0;  // limit of the averages = period mean
};

SequenceProfile profile_eventually_periodic(const std::vector<double>& pre,
                                            const std::vector<double>& per);

struct TimeAverageProfile {
  EventuallyPeriodicPoint point;
  double inf_over_n = 0.0;
  std::optional<long long> inf_attained_at;
  double liminf = 0.0;
  double limsup = 0.0;
  double sup_over_n = 0.0;
};

// Exact inf over all n of S_n(phi)(x)/n, plus liminf = limsup (eventually
// periodic points are regular) and the symmetric supremum.
TimeAverageProfile exact_inf_time_average(const EventuallyPeriodicPoint& point,
                                          const SubshiftSystem& system);

// sup over periodic points (rotations of simple cycles up to max_cycle_len)
// of inf over n of the time averages. Equals alpha once max_cycle_len
// reaches the optimal cycle length, by the cyclic lemma.
double sup_inf_over_periodic(const WeightedDigraph& graph, int max_cycle_len);

// (sup_x sup_n, inf_x inf_n) over the same periodic family; generally a
// strict enclosure of alpha.
std::pair<double, double> supsup_infinf_diagnostics(const WeightedDigraph& graph,
                                                    int max_cycle_len);

struct MinimaxCheck {
  double inf_row_sups = 0.0;
  double sup_col_infs = 0.0;
  bool holds = false;  // inf_row_sups >= sup_col_infs, always true
};

MinimaxCheck minimax_inequality_check(const std::vector<std::vector<double>>& f);

// Exact inf over all n of max_i S_i(n)/n for a finite family of eventually
// periodic weight sequences (pre, per). Used to evaluate inf_n sup_x over a
// finite point set without truncation.
struct InfOfSup {
  double value = 0.0;
  bool attained = false;
  std::optional<long long> attained_at;
};

InfOfSup exact_inf_of_pointwise_sup(
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>& seqs);

}  // namespace ergomax
