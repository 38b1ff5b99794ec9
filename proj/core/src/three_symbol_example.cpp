#include "ergomax/three_symbol_example.hpp"

#include <algorithm>
#include <cmath>

namespace ergomax {

SubshiftSystem three_symbol_system(double a) {
  if (a == 0.0 || a == 1.0) {
    throw DomainError("parameter a must differ from 0 and 1");
  }
  SubshiftSystem system;
  system.symbols = {"0", "1", "a"};
  system.transition = {{0, 1, 0}, {1, 0, 0}, {0, 1, 0}};
  system.potential.depth = 1;
  system.potential.default_value = 0.0;
  system.potential.values[{1}] = 1.0;
  system.potential.values[{2}] = a;
  return system;
}

ThreeSymbolReport three_symbol_report(double a, int horizon, double tol) {
  if (horizon < 1) throw DomainError("horizon must be >= 1");
  SubshiftSystem system = three_symbol_system(a);
  WeightedDigraph graph = trim_and_recode(system);

  ThreeSymbolReport report;
  report.a = a;
  report.horizon = horizon;

  const int s0 = system.symbol_index("0");
  const int s1 = system.symbol_index("1");
  const int sa = system.symbol_index("a");
  std::vector<std::pair<std::string, EventuallyPeriodicPoint>> named = {
      {"(10)^inf", {{}, {s1, s0}}},
      {"(01)^inf", {{}, {s0, s1}}},
      {"a(10)^inf", {{sa}, {s1, s0}}},
  };

  std::vector<std::pair<std::vector<double>, std::vector<double>>> weight_seqs;
  for (auto& [label, point] : named) {
    ThreeSymbolReport::PointSeries series;
    series.label = label;
    series.point = point;
    for (int n = 1; n <= horizon; ++n) {
      series.averages.push_back(birkhoff_sum(point, n, system) / n);
    }
    series.profile = exact_inf_time_average(point, system);
    report.points.push_back(std::move(series));

    // Weight sequences feeding the exact inf over n of the pointwise sup.
    auto weight_of = [&](std::size_t pos) {
      std::vector<int> word{point_symbol_at(point, pos)};
      return system.potential.value_of(word);
    };
    std::vector<double> pre, per;
    for (std::size_t i = 0; i < point.preperiod.size(); ++i) {
      pre.push_back(weight_of(i));
    }
    for (std::size_t i = 0; i < point.period.size(); ++i) {
      per.push_back(weight_of(point.preperiod.size() + i));
    }
    weight_seqs.emplace_back(std::move(pre), std::move(per));
  }

  HorizonTable table = horizon_table(graph, horizon);
  for (const auto& [n, sup] : table.rows) {
    (void)n;
    report.horizon_sups.push_back(sup);
  }
  report.alpha = alpha_karp(graph).value;

  InfOfSup inf_sup = exact_inf_of_pointwise_sup(weight_seqs);
  report.inf_n_sup_x = inf_sup.value;
  report.inf_n_sup_x_attained = inf_sup.attained;

  report.sup_x_inf_n = report.points[0].profile.inf_over_n;
  report.sup_sup = report.points[0].profile.sup_over_n;
  report.inf_inf = report.points[0].profile.inf_over_n;
  for (const auto& series : report.points) {
    report.sup_x_inf_n = std::max(report.sup_x_inf_n, series.profile.inf_over_n);
    report.sup_sup = std::max(report.sup_sup, series.profile.sup_over_n);
    report.inf_inf = std::min(report.inf_inf, series.profile.inf_over_n);
  }

  report.identities_hold = std::abs(report.alpha - 0.5) <= tol &&
                           std::abs(report.inf_n_sup_x - 0.5) <= tol &&
                           std::abs(report.sup_x_inf_n - 0.5) <= tol;
  if (!report.identities_hold) {
    throw InternalError("three-symbol identities failed at a = " +
                        std::to_string(a));
  }
  return report;
}

}  // namespace ergomax
