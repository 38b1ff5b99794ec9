#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ergomax/averages.hpp"
#include "ergomax/pressure.hpp"
#include "ergomax/three_symbol_example.hpp"
#include "test_util.hpp"

using namespace ergomax;

namespace {

// Perron root of a 2x2 nonnegative matrix by the quadratic formula.
double perron_2x2(double a, double b, double c, double d) {
  double tr = a + d, det = a * d - b * c;
  return (tr + std::sqrt(tr * tr - 4.0 * det)) / 2.0;
}

PotentialVector random_vertex_potential(const WeightedDigraph& graph,
                                        std::mt19937& rng, double span = 1.0) {
  std::uniform_real_distribution<double> unif(-span, span);
  PotentialVector phi = PotentialVector::constant(graph, 1, 0.0);
  for (double& v : phi.values) v = unif(rng);
  return phi;
}

}  // namespace

TEST_CASE("spectral pressure closed forms") {
  // Full 2-shift at phi = 0: log of the Perron root of the all-ones matrix.
  WeightedDigraph full = trim_and_recode(testutil::full_shift(2));
  CHECK(spectral_pressure(full, PotentialVector::constant(full, 1, 0.0)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // Golden-mean shift: root of x^2 = x + 1.
  WeightedDigraph gm = trim_and_recode(testutil::golden_mean());
  double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(spectral_pressure(gm, PotentialVector::constant(gm, 1, 0.0)) ==
        doctest::Approx(std::log(golden)).epsilon(1e-12));

  // Full 2-shift with vertex potential (log 3, 0): matrix [[3,3],[1,1]].
  PotentialVector phi = PotentialVector::vertex({std::log(3.0), 0.0});
  CHECK(spectral_pressure(full, phi) ==
        doctest::Approx(std::log(perron_2x2(3, 3, 1, 1))).epsilon(1e-12));
  CHECK(perron_2x2(3, 3, 1, 1) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("spectral pressure refuses reducible graphs") {
  // The worked-example graph has the dangling symbol a.
  WeightedDigraph graph = trim_and_recode(three_symbol_system(0.25));
  CHECK_FALSE(is_irreducible(graph));
  CHECK_THROWS_AS(
      spectral_pressure(graph, PotentialVector::constant(graph, 1, 0.0)),
      DomainError);
  // Sup and max-ergodic instances still work there.
  PotentialVector phi = PotentialVector::vertex(graph.vertex_weight);
  CHECK(sup_pressure(graph, phi) == doctest::Approx(1.0));
  CHECK(max_ergodic_pressure(graph, phi) == doctest::Approx(0.5));
}

TEST_CASE("sup and max-ergodic instances on the worked example") {
  WeightedDigraph graph = trim_and_recode(three_symbol_system(0.25));
  PotentialVector phi = PotentialVector::vertex(graph.vertex_weight);
  CHECK(sup_pressure(graph, phi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(max_ergodic_pressure(graph, phi) == doctest::Approx(0.5).epsilon(1e-15));

  // Constants: translation invariance from zero.
  for (double c : {-1.0, 0.4}) {
    PotentialVector constant = PotentialVector::constant(graph, 1, c);
    CHECK(sup_pressure(graph, constant) == doctest::Approx(c));
    CHECK(max_ergodic_pressure(graph, constant) == doctest::Approx(c));
  }
}

TEST_CASE("axiom suite passes for all three instances") {
  WeightedDigraph gm = trim_and_recode(testutil::golden_mean());
  std::mt19937 rng(808);
  std::vector<std::pair<PotentialVector, PotentialVector>> samples;
  for (int i = 0; i < 50; ++i) {
    samples.emplace_back(random_vertex_potential(gm, rng),
                         random_vertex_potential(gm, rng));
  }
  std::vector<double> lambdas = {0.0, 0.3, 0.5, 0.8, 1.0};

  for (auto kind : {PressureFunction::Kind::spectral,
                    PressureFunction::Kind::sup_norm,
                    PressureFunction::Kind::max_ergodic}) {
    PressureFunction gamma(kind, gm);
    AxiomReport report = axiom_check(gamma, samples, lambdas);
    CHECK(report.all_ok());
    if (kind == PressureFunction::Kind::sup_norm) {
      CHECK_FALSE(report.c4_ok.has_value());  // C4 not expected of sup-norm
    } else {
      REQUIRE(report.c4_ok.has_value());
      CHECK(*report.c4_ok);
    }
  }
}

TEST_CASE("translation invariance is exact for the sup instance") {
  WeightedDigraph gm = trim_and_recode(testutil::golden_mean());
  std::mt19937 rng(33);
  PotentialVector phi = random_vertex_potential(gm, rng);
  PressureFunction sup(PressureFunction::Kind::sup_norm, gm);
  PotentialVector shifted = phi;
  for (double& v : shifted.values) v += 5.0;
  CHECK(sup(shifted) == sup(phi) + 5.0);
}

TEST_CASE("coboundary perturbations leave alpha unchanged") {
  // psi(0)=1, psi(1)=0 on the worked example's {0,1} component: perturb the
  // edge potential by psi(v)-psi(u) and compare cycle means by brute force.
  WeightedDigraph graph = trim_and_recode(three_symbol_system(0.25));
  PotentialVector phi = lift_to_edges(
      PotentialVector::vertex(graph.vertex_weight), graph);
  std::vector<double> psi = {1.0, 0.0, 0.0};
  PotentialVector perturbed = phi;
  for (int e = 0; e < graph.edge_count(); ++e) {
    auto [u, v] = graph.edges[e];
    perturbed.values[e] += psi[v] - psi[u];
  }
  CHECK(max_ergodic_pressure(graph, perturbed) ==
        doctest::Approx(max_ergodic_pressure(graph, phi)).epsilon(1e-12));

  // Brute-force oracle: perturbed cycle sums coincide with the originals.
  for (const Cycle& cycle : enumerate_simple_cycles(graph, 3)) {
    double base = 0.0, pert = 0.0;
    for (std::size_t i = 0; i < cycle.vertices.size(); ++i) {
      int u = cycle.vertices[i];
      int v = cycle.vertices[(i + 1) % cycle.vertices.size()];
      int e = graph.edge_index(u, v);
      base += phi.values[e];
      pert += perturbed.values[e];
    }
    CHECK(base == doctest::Approx(pert).epsilon(1e-14));
  }
}

TEST_CASE("gibbs chain of the full 2-shift is uniform") {
  WeightedDigraph full = trim_and_recode(testutil::full_shift(2));
  MarkovMeasure mu = gibbs_chain(full, PotentialVector::constant(full, 1, 0.0));
  for (int u = 0; u < 2; ++u) {
    CHECK(mu.stationary[u] == doctest::Approx(0.5).epsilon(1e-10));
    for (int v = 0; v < 2; ++v) {
      CHECK(mu.transitions[u][v] == doctest::Approx(0.5).epsilon(1e-10));
    }
  }
  mu.validate(full);
}

TEST_CASE("gibbs chain of the golden-mean shift is the Parry measure") {
  WeightedDigraph gm = trim_and_recode(testutil::golden_mean());
  MarkovMeasure mu = gibbs_chain(gm, PotentialVector::constant(gm, 1, 0.0));
  double g = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(mu.transitions[0][0] == doctest::Approx(1.0 / g).epsilon(1e-10));
  CHECK(mu.transitions[0][1] == doctest::Approx(1.0 / (g * g)).epsilon(1e-10));
  CHECK(mu.transitions[1][0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(mu.stationary[0] == doctest::Approx(g * g / (1 + g * g)).epsilon(1e-10));
  mu.validate(gm);
}

TEST_CASE("gibbs chains are stationary to 1e-10") {
  std::mt19937 rng(909);
  for (int trial = 0; trial < 20; ++trial) {
    SubshiftSystem system = testutil::random_irreducible_system(rng, 3 + trial % 4);
    WeightedDigraph graph = trim_and_recode(system);
    MarkovMeasure mu = gibbs_chain(graph, random_vertex_potential(graph, rng));
    mu.validate(graph, 1e-10);
  }
}

TEST_CASE("markov entropy closed forms") {
  // Uniform 2-state chain.
  MarkovMeasure uniform{{0.5, 0.5}, {{0.5, 0.5}, {0.5, 0.5}}};
  CHECK(markov_entropy(uniform) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // Deterministic cycle.
  MarkovMeasure cycle{{0.5, 0.5}, {{0.0, 1.0}, {1.0, 0.0}}};
  CHECK(markov_entropy(cycle) == doctest::Approx(0.0).epsilon(1e-14));
  // i.i.d.(0.3, 0.7): calculator oracle.
  MarkovMeasure iid{{0.3, 0.7}, {{0.3, 0.7}, {0.3, 0.7}}};
  double oracle = -(0.3 * std::log(0.3) + 0.7 * std::log(0.7));
  CHECK(markov_entropy(iid) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(oracle == doctest::Approx(0.610864).epsilon(1e-6));
}

TEST_CASE("VP1 on golden-mean and full shifts") {
  WeightedDigraph gm = trim_and_recode(testutil::golden_mean());
  Vp1Report gm_report = vp1_check(gm, PotentialVector::constant(gm, 1, 0.0));
  double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(gm_report.lhs == doctest::Approx(std::log(golden)).epsilon(1e-10));
  CHECK(gm_report.gap <= 1e-10);
  CHECK(gm_report.max_random_excess <= 1e-9);

  WeightedDigraph full = trim_and_recode(testutil::full_shift(2));
  Vp1Report full_report = vp1_check(full, PotentialVector::constant(full, 1, 0.0));
  CHECK(full_report.lhs == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK(full_report.rhs == doctest::Approx(std::log(2.0)).epsilon(1e-8));

  // Random edge potential on the full shift.
  std::mt19937 rng(111);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  PotentialVector phi = PotentialVector::constant(full, 2, 0.0);
  for (double& v : phi.values) v = unif(rng);
  Vp1Report random_report = vp1_check(full, phi);
  CHECK(random_report.gap <= 1e-8);
}

TEST_CASE("convexity recovered post hoc on the spectral instance") {
  WeightedDigraph gm = trim_and_recode(testutil::golden_mean());
  PressureFunction gamma(PressureFunction::Kind::spectral, gm);
  std::mt19937 rng(112);
  for (int trial = 0; trial < 50; ++trial) {
    PotentialVector a = random_vertex_potential(gm, rng);
    PotentialVector b = random_vertex_potential(gm, rng);
    double lam = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    PotentialVector mix = a;
    for (std::size_t i = 0; i < mix.values.size(); ++i) {
      mix.values[i] = lam * a.values[i] + (1 - lam) * b.values[i];
    }
    CHECK(gamma(mix) <= lam * gamma(a) + (1 - lam) * gamma(b) + 1e-9);
  }
}

TEST_CASE("entropy via VP2: Parry measure of the golden-mean shift") {
  WeightedDigraph gm = trim_and_recode(testutil::golden_mean());
  MarkovMeasure parry = gibbs_chain(gm, PotentialVector::constant(gm, 1, 0.0));
  Vp2Result result = entropy_via_vp2(gm, parry);
  double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  CHECK(result.value == doctest::Approx(std::log(golden)).epsilon(1e-6));
  CHECK(std::abs(result.value - markov_entropy(parry)) <= 1e-5);
}

TEST_CASE("entropy via VP2: i.i.d.(0.3, 0.7)") {
  WeightedDigraph full = trim_and_recode(testutil::full_shift(2));
  MarkovMeasure iid{{0.3, 0.7}, {{0.3, 0.7}, {0.3, 0.7}}};
  iid.validate(full);
  Vp2Result result = entropy_via_vp2(full, iid);
  CHECK(std::abs(result.value - markov_entropy(iid)) <= 1e-5);
  CHECK(result.value == doctest::Approx(0.610864).epsilon(1e-4));
}

TEST_CASE("entropy via VP2 on a zero-entropy boundary target") {
  // Deterministic 2-cycle on the full 2-shift: unused edges push the
  // optimal potentials to the cap; the capped value is reported with the
  // boundary flag rather than an error.
  WeightedDigraph full = trim_and_recode(testutil::full_shift(2));
  MarkovMeasure cyc{{0.5, 0.5}, {{0.0, 1.0}, {1.0, 0.0}}};
  cyc.validate(full);
  Vp2Result result = entropy_via_vp2(full, cyc, 1e-5, 20000);
  CHECK(result.boundary_capped);
  CHECK(result.value >= -1e-9);
  CHECK(result.value <= 0.05);  // approaches 0 from above, capped at +-50
}

TEST_CASE("VP2 lower-envelope consistency and the A_Gamma identity") {
  WeightedDigraph gm = trim_and_recode(testutil::golden_mean());
  MarkovMeasure parry = gibbs_chain(gm, PotentialVector::constant(gm, 1, 0.0));
  Vp2Result vp2 = entropy_via_vp2(gm, parry);
  PressureFunction gamma(PressureFunction::Kind::spectral, gm);

  std::mt19937 rng(113);
  double sampled_inf = 1e300;
  for (int trial = 0; trial < 200; ++trial) {
    PotentialVector phi = lift_to_edges(random_vertex_potential(gm, rng), gm);
    double g_phi = gamma(phi);
    double paired = pairing(phi, parry, gm);
    // xi = Gamma(phi) - phi lies in the admissible set with Gamma(-xi) = 0.
    PotentialVector xi = phi;
    for (double& v : xi.values) v = g_phi - v;
    double gamma_neg = 0.0;
    CHECK(in_admissible_set(gamma, xi, 1e-9, &gamma_neg));
    CHECK(std::abs(gamma_neg) <= 1e-9);
    // <Gamma(phi) - phi, nu> = Gamma(phi) - <phi, nu> (algebraic identity).
    double lhs = pairing(xi, parry, gm);
    CHECK(lhs == doctest::Approx(g_phi - paired).epsilon(1e-12));
    // Each value upper-bounds the VP2 infimum.
    CHECK(g_phi - paired >= vp2.value - 1e-9);
    sampled_inf = std::min(sampled_inf, g_phi - paired);
  }
  // Include the analytic minimizer phi = log P to close the sandwich.
  PotentialVector opt = PotentialVector::constant(gm, 2, 0.0);
  for (int e = 0; e < gm.edge_count(); ++e) {
    auto [u, v] = gm.edges[e];
    opt.values[e] = std::log(parry.transitions[u][v]);
  }
  double closed = gamma(opt) - pairing(opt, parry, gm);
  sampled_inf = std::min(sampled_inf, closed);
  CHECK(sampled_inf == doctest::Approx(vp2.value).epsilon(1e-6));
}

TEST_CASE("admissible-set membership examples") {
  WeightedDigraph full = trim_and_recode(testutil::full_shift(2));
  PressureFunction gamma(PressureFunction::Kind::spectral, full);
  // xi = 1: Gamma(-1) = log 2 - 1 < 0.
  CHECK(in_admissible_set(gamma, PotentialVector::constant(full, 1, 1.0), 1e-9));
  // xi = -1: Gamma(1) = log 2 + 1 > 0.
  CHECK_FALSE(
      in_admissible_set(gamma, PotentialVector::constant(full, 1, -1.0), 1e-9));
}

TEST_CASE("potential and measure parsing round out the CLI surface") {
  WeightedDigraph full = trim_and_recode(testutil::full_shift(2));
  PotentialVector phi = parse_potential_vector(
      R"({"depth": 1, "default": 0.25, "entries": {"1": 2.0}})", full);
  CHECK(phi.values == std::vector<double>{0.25, 2.0});
  CHECK_THROWS_AS(parse_potential_vector(R"({"depth": 1,
    "entries": {"z": 1.0}})", full),
                  ParseError);

  MarkovMeasure mu = parse_markov_measure(R"({
    "stationary": {"0": 0.5, "1": 0.5},
    "transitions": {"0": {"0": 0.5, "1": 0.5}, "1": {"0": 0.5, "1": 0.5}}
  })", full);
  CHECK(markov_entropy(mu) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}
