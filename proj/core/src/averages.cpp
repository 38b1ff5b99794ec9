#include "ergomax/averages.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mean_cycle.hpp"

namespace ergomax {

namespace {

detail::EdgeGraph source_weighted(const WeightedDigraph& graph) {
  detail::EdgeGraph g;
  g.n = graph.vertex_count();
  g.out.resize(g.n);
  for (auto [u, v] : graph.edges) {
    g.out[u].emplace_back(v, graph.vertex_weight[u]);
  }
  return g;
}

}  // namespace

AlphaResult alpha_karp(const WeightedDigraph& graph) {
  detail::EdgeGraph g = source_weighted(graph);
  double value = detail::karp_max_mean(g);
  std::vector<double> psi = detail::relax_potentials(g, value);
  std::vector<int> witness;
  try {
    witness = detail::tight_cycle_lex(g, value, psi, 1e-12);
  } catch (const InternalError&) {
    witness = detail::tight_cycle_lex(g, value, psi, 1e-10);
  }
  return {value, std::move(witness), AlphaResult::Method::karp};
}

AlphaResult alpha_bruteforce(const WeightedDigraph& graph) {
  if (graph.vertex_count() > 12) {
    throw DomainError("alpha_bruteforce: graph too large (> 12 vertices)");
  }
  auto cycles = enumerate_simple_cycles(graph, graph.vertex_count());
  if (cycles.empty()) {
    throw InternalError("alpha_bruteforce: trimmed graph has no cycle");
  }
  const Cycle* best = &cycles.front();
  for (const Cycle& c : cycles) {
    if (c.mean > best->mean) best = &c;
  }
  return {best->mean, best->vertices, AlphaResult::Method::brute_force};
}

double horizon_sup(const WeightedDigraph& graph, int n) {
  if (n < 1) throw DomainError("horizon_sup requires n >= 1");
  const int nv = graph.vertex_count();
  // best[v] = max weight of an i-vertex walk starting at v.
  std::vector<double> best(graph.vertex_weight);
  for (int i = 2; i <= n; ++i) {
    std::vector<double> next(nv, -std::numeric_limits<double>::infinity());
    for (int v = 0; v < nv; ++v) {
      for (int w : graph.out[v]) {
        next[v] = std::max(next[v], graph.vertex_weight[v] + best[w]);
      }
    }
    best.swap(next);
  }
  return *std::max_element(best.begin(), best.end()) / static_cast<double>(n);
}

HorizonTable horizon_table(const WeightedDigraph& graph, int big_n) {
  if (big_n < 1) throw DomainError("horizon_table requires N >= 1");
  const int nv = graph.vertex_count();
  HorizonTable table;
  std::vector<double> best(graph.vertex_weight);
  table.rows.emplace_back(1, *std::max_element(best.begin(), best.end()));
  for (int n = 2; n <= big_n; ++n) {
    std::vector<double> next(nv, -std::numeric_limits<double>::infinity());
    for (int v = 0; v < nv; ++v) {
      for (int w : graph.out[v]) {
        next[v] = std::max(next[v], graph.vertex_weight[v] + best[w]);
      }
    }
    best.swap(next);
    table.rows.emplace_back(
        n, *std::max_element(best.begin(), best.end()) / static_cast<double>(n));
  }
  table.running_inf = table.rows.front().second;
  for (const auto& [n, v] : table.rows) {
    (void)n;
    table.running_inf = std::min(table.running_inf, v);
  }
  // Any n-walk splits into simple cycles (mean <= alpha) plus at most |V|
  // leftover vertices, each costing at most w_max - alpha over alpha.
  double alpha = alpha_karp(graph).value;
  double w_max =
      *std::max_element(graph.vertex_weight.begin(), graph.vertex_weight.end());
  table.error_bound = nv * (w_max - alpha) / static_cast<double>(big_n);
  return table;
}

SequenceProfile profile_eventually_periodic(const std::vector<double>& pre,
                                            const std::vector<double>& per) {
  if (per.empty()) throw DomainError("period must be nonempty");
  const long long n0 = static_cast<long long>(pre.size());
  const long long p = static_cast<long long>(per.size());
  const long long direct = n0 + 2 * p;

  double period_sum = std::accumulate(per.begin(), per.end(), 0.0);
  double limit = period_sum / static_cast<double>(p);

  SequenceProfile prof;
  prof.mean_limit = limit;

  double running = 0.0;
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = -std::numeric_limits<double>::infinity();
  long long argmin = 0, argmax = 0;
  for (long long n = 1; n <= direct; ++n) {
    long long i = n - 1;
    running += i < n0 ? pre[i] : per[(i - n0) % p];
    double avg = running / static_cast<double>(n);
    if (avg < dmin) {
      dmin = avg;
      argmin = n;
    }
    if (avg > dmax) {
      dmax = avg;
      argmax = n;
    }
  }

  // Beyond the direct range each residue class follows (K + qB)/(n0 + r + qp),
  // monotone in q; its values lie between the q=1 entry (inside the direct
  // range) and the limit B/p.
  if (dmin <= limit) {
    prof.inf_value = dmin;
    prof.inf_attained_at = argmin;
  } else {
    prof.inf_value = limit;
  }
  if (dmax >= limit) {
    prof.sup_value = dmax;
    prof.sup_attained_at = argmax;
  } else {
    prof.sup_value = limit;
  }
  return prof;
}

TimeAverageProfile exact_inf_time_average(const EventuallyPeriodicPoint& point,
                                          const SubshiftSystem& system) {
  validate_point(point, system);
  const int k = system.potential.depth;
  const long long n0 = static_cast<long long>(point.preperiod.size());
  const long long p = static_cast<long long>(point.period.size());

  // The sequence phi(T^i x) is itself eventually periodic with the same
  // preperiod length and period, since the depth-k window slides right.
  std::vector<double> g_pre, g_per;
  std::vector<int> window(k);
  for (long long i = 0; i < n0 + p; ++i) {
    for (int j = 0; j < k; ++j) {
      window[j] = point_symbol_at(point, static_cast<std::size_t>(i + j));
    }
    (i < n0 ? g_pre : g_per).push_back(system.potential.value_of(window));
  }

  SequenceProfile prof = profile_eventually_periodic(g_pre, g_per);
  TimeAverageProfile out;
  out.point = point;
  out.inf_over_n = prof.inf_value;
  out.inf_attained_at = prof.inf_attained_at;
  out.liminf = prof.mean_limit;
  out.limsup = prof.mean_limit;
  out.sup_over_n = prof.sup_value;
  return out;
}

double sup_inf_over_periodic(const WeightedDigraph& graph, int max_cycle_len) {
  if (max_cycle_len < 1) throw DomainError("max_cycle_len must be >= 1");
  auto cycles = enumerate_simple_cycles(graph, max_cycle_len);
  if (cycles.empty()) {
    throw InternalError("trimmed graph has no cycle within the length cap");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const Cycle& c : cycles) {
    std::vector<double> weights;
    for (int v : c.vertices) weights.push_back(graph.vertex_weight[v]);
    for (std::size_t r = 0; r < weights.size(); ++r) {
      std::vector<double> rotated(weights.begin() + r, weights.end());
      rotated.insert(rotated.end(), weights.begin(), weights.begin() + r);
      best = std::max(best, profile_eventually_periodic({}, rotated).inf_value);
    }
  }
  return best;
}

std::pair<double, double> supsup_infinf_diagnostics(const WeightedDigraph& graph,
                                                    int max_cycle_len) {
  if (max_cycle_len < 1) throw DomainError("max_cycle_len must be >= 1");
  auto cycles = enumerate_simple_cycles(graph, max_cycle_len);
  if (cycles.empty()) {
    throw InternalError("trimmed graph has no cycle within the length cap");
  }
  double sup_sup = -std::numeric_limits<double>::infinity();
  double inf_inf = std::numeric_limits<double>::infinity();
  for (const Cycle& c : cycles) {
    std::vector<double> weights;
    for (int v : c.vertices) weights.push_back(graph.vertex_weight[v]);
    for (std::size_t r = 0; r < weights.size(); ++r) {
      std::vector<double> rotated(weights.begin() + r, weights.end());
      rotated.insert(rotated.end(), weights.begin(), weights.begin() + r);
      SequenceProfile prof = profile_eventually_periodic({}, rotated);
      sup_sup = std::max(sup_sup, prof.sup_value);
      inf_inf = std::min(inf_inf, prof.inf_value);
    }
  }
  return {sup_sup, inf_inf};
}

MinimaxCheck minimax_inequality_check(const std::vector<std::vector<double>>& f) {
  if (f.empty() || f.front().empty()) {
    throw DomainError("minimax_inequality_check requires a nonempty matrix");
  }
  const std::size_t cols = f.front().size();
  for (const auto& row : f) {
    if (row.size() != cols) throw DomainError("matrix rows must have equal length");
  }
  MinimaxCheck check;
  check.inf_row_sups = std::numeric_limits<double>::infinity();
  for (const auto& row : f) {
    check.inf_row_sups =
        std::min(check.inf_row_sups, *std::max_element(row.begin(), row.end()));
  }
  check.sup_col_infs = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < cols; ++j) {
    double col_min = std::numeric_limits<double>::infinity();
    for (const auto& row : f) col_min = std::min(col_min, row[j]);
    check.sup_col_infs = std::max(check.sup_col_infs, col_min);
  }
  check.holds = check.inf_row_sups >= check.sup_col_infs;
  return check;
}

InfOfSup exact_inf_of_pointwise_sup(
    const std::vector<std::pair<std::vector<double>, std::vector<double>>>& seqs) {
  if (seqs.empty()) throw DomainError("need at least one sequence");
  long long n0 = 0, big_p = 1;
  for (const auto& [pre, per] : seqs) {
    if (per.empty()) throw DomainError("period must be nonempty");
    n0 = std::max(n0, static_cast<long long>(pre.size()));
    big_p = std::lcm(big_p, static_cast<long long>(per.size()));
    if (big_p > 100000) throw DomainError("combined period too large");
  }

  auto partial_sum = [](const std::pair<std::vector<double>, std::vector<double>>& s,
                        long long n) {
    const auto& [pre, per] = s;
    const long long np = static_cast<long long>(pre.size());
    const long long p = static_cast<long long>(per.size());
    double total = 0.0;
    long long taken = std::min(n, np);
    for (long long i = 0; i < taken; ++i) total += pre[i];
    long long rest = n - taken;
    if (rest > 0) {
      double per_sum = std::accumulate(per.begin(), per.end(), 0.0);
      total += static_cast<double>(rest / p) * per_sum;
      for (long long i = 0; i < rest % p; ++i) total += per[i];
    }
    return total;
  };

  // Past all pairwise crossings of (K_i + q B_i)/(n0 + r + q P), the max is a
  // single monotone sequence per residue; its values then lie between the
  // first tail entry and the common limit max_i mean_i.
  long long q_star = 1;
  for (long long r = 0; r < big_p; ++r) {
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      for (std::size_t j = i + 1; j < seqs.size(); ++j) {
        double bi = partial_sum(seqs[i], n0 + r + 2 * big_p) -
                    partial_sum(seqs[i], n0 + r + big_p);
        double bj = partial_sum(seqs[j], n0 + r + 2 * big_p) -
                    partial_sum(seqs[j], n0 + r + big_p);
        if (bi == bj) continue;
        double ki = partial_sum(seqs[i], n0 + r);
        double kj = partial_sum(seqs[j], n0 + r);
        double cross = (kj - ki) / (bi - bj);
        if (cross > 0) {
          if (cross >= 1e6) {
            throw DomainError("pointwise-sup crossings exceed the scan bound");
          }
          q_star = std::max(q_star, static_cast<long long>(std::ceil(cross)) + 1);
        }
      }
    }
  }

  const long long direct = n0 + (q_star + 2) * big_p;
  InfOfSup out;
  double dmin = std::numeric_limits<double>::infinity();
  long long argmin = 0;
  for (long long n = 1; n <= direct; ++n) {
    double sup = -std::numeric_limits<double>::infinity();
    for (const auto& s : seqs) {
      sup = std::max(sup, partial_sum(s, n) / static_cast<double>(n));
    }
    if (sup < dmin) {
      dmin = sup;
      argmin = n;
    }
  }
  double limit = -std::numeric_limits<double>::infinity();
  for (const auto& [pre, per] : seqs) {
    (void)pre;
    limit = std::max(limit, std::accumulate(per.begin(), per.end(), 0.0) /
                                static_cast<double>(per.size()));
  }
  if (dmin <= limit) {
    out.value = dmin;
    out.attained = true;
    out.attained_at = argmin;
  } else {
    out.value = limit;
    out.attained = false;
  }
  return out;
}

}  // namespace ergomax
