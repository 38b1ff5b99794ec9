#pragma once

// Generalized pressure functions on the recoded graph: the spectral
// (transfer-operator) instance, the sup-norm instance, and the maximum
// ergodic average instance, together with the axioms C1-C4, Gibbs Markov
// chains, entropy, and both halves of the abstract variational principle.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ergomax/symbolic.hpp"

namespace ergomax {

// Finite-dimensional potential: one real per vertex (depth 1) or per edge
// (depth 2) of the recoded graph.
struct PotentialVector {
  int depth = 1;
  std::vector<double> values;

  static PotentialVector vertex(std::vector<double> vals) {
    return {1, std::move(vals)};
  }
  static PotentialVector edge(std::vector<double> vals) {
    return {2, std::move(vals)};
  }
  static PotentialVector constant(const WeightedDigraph& graph, int depth,
                                  double c);
};

void validate_potential(const PotentialVector& phi, const WeightedDigraph& graph);

// Edge-indexed copy; depth-1 potentials read off the source vertex.
PotentialVector lift_to_edges(const PotentialVector& phi,
                              const WeightedDigraph& graph);

bool is_irreducible(const WeightedDigraph& graph);

// Stationary Markov chain supported on the allowed edges.
struct MarkovMeasure {
  std::vector<double> stationary;               // per vertex, sums to 1
  std::vector<std::vector<double>> transitions;  // row-stochastic, dense

  void validate(const WeightedDigraph& graph, double tol = 1e-10) const;
};

// nu(u,v) = stationary(u) * transitions(u,v), flattened in edge order.
std::vector<double> edge_occupation(const MarkovMeasure& mu,
                                    const WeightedDigraph& graph);

// <phi, mu> through the edge occupation.
double pairing(const PotentialVector& phi, const MarkovMeasure& mu,
               const WeightedDigraph& graph);

// log of the Perron root of M(u,v) = [edge allowed] * exp(phi at u or at
// (u,v)). Power iteration, relative tolerance 1e-12, at most 1e5 iterations.
double spectral_pressure(const WeightedDigraph& graph, const PotentialVector& phi);

// Gamma(phi) = sup over points of phi = max over vertices/edges.
double sup_pressure(const WeightedDigraph& graph, const PotentialVector& phi);

// Gamma(phi) = alpha(phi) via the maximum mean cycle.
double max_ergodic_pressure(const WeightedDigraph& graph,
                            const PotentialVector& phi);

class PressureFunction {
 public:
  enum class Kind { spectral, sup_norm, max_ergodic };

  // The spectral instance refuses reducible graphs at construction.
  PressureFunction(Kind kind, const WeightedDigraph& graph);

  double operator()(const PotentialVector& phi) const;
  Kind kind() const { return kind_; }
  const WeightedDigraph& graph() const { return *graph_; }
  std::string name() const;

 private:
  Kind kind_;
  const WeightedDigraph* graph_;
};

struct AxiomReport {
  bool c1_ok = true, c2_ok = true, c3_ok = true;
  std::optional<bool> c4_ok;  // absent when C4 is not expected of the instance
  double c1_violation = 0.0, c2_violation = 0.0, c3_violation = 0.0,
         c4_violation = 0.0;
  int failing_sample = -1;
  std::string failing_axiom;

  bool all_ok() const {
    return c1_ok && c2_ok && c3_ok && c4_ok.value_or(true);
  }
};

// Checks monotonicity, translation invariance and convexity on the sample
// pairs, and cohomology invariance (spectral and max-ergodic instances) with
// vertex functions derived from the samples.
AxiomReport axiom_check(const PressureFunction& gamma,
                        const std::vector<std::pair<PotentialVector,
                                                    PotentialVector>>& samples,
                        const std::vector<double>& lambdas,
                        double tol = 1e-9);

// Markov chain from the Perron data of the weighted matrix:
// transitions(u,v) = M(u,v) r(v) / (lambda r(u)), stationary = l*r normalized.
MarkovMeasure gibbs_chain(const WeightedDigraph& graph,
                          const PotentialVector& phi);

// -sum_u pi(u) sum_v P(u,v) log P(u,v), with 0 log 0 = 0.
double markov_entropy(const MarkovMeasure& mu);

// Random chain supported on all allowed edges (interior of the polytope).
MarkovMeasure random_markov_measure(const WeightedDigraph& graph,
                                    std::mt19937& rng);

struct Vp1Report {
  double lhs = 0.0;      // Gamma(phi)
  double entropy = 0.0;  // h(Gibbs chain)
  double pairing = 0.0;  // <phi, Gibbs chain>
  double rhs = 0.0;      // entropy + pairing
  double gap = 0.0;
  double max_random_excess = 0.0;  // worst (h + <phi,mu>) - lhs over samples
  int random_count = 0;
};

// Both sides of the variational principle for the spectral instance, plus
// the supremum check over random Markov measures.
Vp1Report vp1_check(const WeightedDigraph& graph, const PotentialVector& phi,
                    int random_measures = 20, unsigned seed = 7);

struct Vp2Result {
  double value = 0.0;
  double gradient_norm = 0.0;
  long long iterations = 0;
  bool converged = false;
  bool boundary_capped = false;  // some potential entry hit the +-50 cap
};

// Entropy of the target as the conjugate of spectral pressure:
// minimize Gamma(phi) - <phi, nu_target> over edge potentials by first-order
// descent (step 0.5, halved on non-decrease); the gradient at phi is
// nu_Gibbs(phi) - nu_target.
Vp2Result entropy_via_vp2(const WeightedDigraph& graph,
                          const MarkovMeasure& target, double tol = 1e-7,
                          long long max_iter = 50000);

// Membership in {xi : Gamma(-xi) <= tol}; also reports Gamma(-xi).
bool in_admissible_set(const PressureFunction& gamma, const PotentialVector& xi,
                       double tol, double* gamma_of_neg = nullptr);

// CLI-facing parsers (JSON documents keyed by vertex/edge labels).
PotentialVector parse_potential_vector(const std::string& text,
                                       const WeightedDigraph& graph);
MarkovMeasure parse_markov_measure(const std::string& text,
                                   const WeightedDigraph& graph);

}  // namespace ergomax
