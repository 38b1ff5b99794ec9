#include <benchmark/benchmark.h>

#include <random>

#include "ergomax/averages.hpp"
#include "ergomax/convex.hpp"
#include "ergomax/pressure.hpp"
#include "ergomax/subaction.hpp"
#include "ergomax/symbolic.hpp"

namespace {

ergomax::SubshiftSystem random_system(std::mt19937& rng, int n_symbols,
                                      double density) {
  std::uniform_real_distribution<double> unif(0.0, 1.0), weight(-1.0, 1.0);
  ergomax::SubshiftSystem system;
  for (int i = 0; i < n_symbols; ++i) {
    system.symbols.push_back("s" + std::to_string(i));
  }
  system.transition.assign(n_symbols, std::vector<int>(n_symbols, 0));
  for (int i = 0; i < n_symbols; ++i) {
    system.transition[i][(i + 1) % n_symbols] = 1;
    for (int j = 0; j < n_symbols; ++j) {
      if (unif(rng) < density) system.transition[i][j] = 1;
    }
  }
  system.potential.depth = 1;
  for (int i = 0; i < n_symbols; ++i) system.potential.values[{i}] = weight(rng);
  return system;
}

void BM_AlphaKarp(benchmark::State& state) {
  std::mt19937 rng(17);
  ergomax::WeightedDigraph graph =
      ergomax::trim_and_recode(random_system(rng, static_cast<int>(state.range(0)), 0.3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ergomax::alpha_karp(graph).value);
  }
}
BENCHMARK(BM_AlphaKarp)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_SubAction(benchmark::State& state) {
  std::mt19937 rng(18);
  ergomax::WeightedDigraph graph =
      ergomax::trim_and_recode(random_system(rng, static_cast<int>(state.range(0)), 0.3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ergomax::solve_subaction(graph).dual_value);
  }
}
BENCHMARK(BM_SubAction)->Arg(8)->Arg(32);

void BM_HorizonTable(benchmark::State& state) {
  std::mt19937 rng(19);
  ergomax::WeightedDigraph graph = ergomax::trim_and_recode(random_system(rng, 12, 0.3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ergomax::horizon_table(graph, static_cast<int>(state.range(0))).running_inf);
  }
}
BENCHMARK(BM_HorizonTable)->Arg(50)->Arg(200);

void BM_SpectralPressure(benchmark::State& state) {
  std::mt19937 rng(20);
  ergomax::WeightedDigraph graph =
      ergomax::trim_and_recode(random_system(rng, static_cast<int>(state.range(0)), 0.5));
  ergomax::PotentialVector phi = ergomax::PotentialVector::vertex(graph.vertex_weight);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ergomax::spectral_pressure(graph, phi));
  }
}
BENCHMARK(BM_SpectralPressure)->Arg(8)->Arg(32);

void BM_ConjugateFast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ergomax::GridConvexFunction f;
  f.grids = {std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    double x = -3.0 + 6.0 * i / (n - 1.0);
    f.grids[0][i] = x;
    f.values.push_back(ergomax::ExtReal(x * x / 2.0));
  }
  std::vector<std::vector<double>> dual = {std::vector<double>(n)};
  for (int i = 0; i < n; ++i) dual[0][i] = -2.0 + 4.0 * i / (n - 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ergomax::conjugate(f, dual).values.size());
  }
}
BENCHMARK(BM_ConjugateFast)->Arg(64)->Arg(1024)->Arg(16384);

void BM_ConjugateBrute(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ergomax::GridConvexFunction f;
  f.grids = {std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    double x = -3.0 + 6.0 * i / (n - 1.0);
    f.grids[0][i] = x;
    f.values.push_back(ergomax::ExtReal(x * x / 2.0));
  }
  std::vector<std::vector<double>> dual = {std::vector<double>(n)};
  for (int i = 0; i < n; ++i) dual[0][i] = -2.0 + 4.0 * i / (n - 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ergomax::conjugate_bruteforce(f, dual).values.size());
  }
}
BENCHMARK(BM_ConjugateBrute)->Arg(64)->Arg(1024);

}  // namespace

BENCHMARK_MAIN();
