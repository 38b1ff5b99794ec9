#include "ergomax/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "linalg.hpp"
#include "mean_cycle.hpp"

namespace ergomax {

namespace {

constexpr double kPowerTol = 1e-12;
constexpr long long kPowerIters = 100000;
constexpr double kPotentialCap = 50.0;

double edge_value(const PotentialVector& phi, const WeightedDigraph& graph,
                  int e) {
  return phi.depth == 1 ? phi.values[graph.edges[e].first] : phi.values[e];
}

detail::Matrix weighted_matrix(const WeightedDigraph& graph,
                               const PotentialVector& phi) {
  const int n = graph.vertex_count();
  detail::Matrix m(n, std::vector<double>(n, 0.0));
  for (int e = 0; e < graph.edge_count(); ++e) {
    auto [u, v] = graph.edges[e];
    m[u][v] = std::exp(edge_value(phi, graph, e));
  }
  return m;
}

void require_irreducible(const WeightedDigraph& graph, const char* who) {
  if (!is_irreducible(graph)) {
    throw DomainError(std::string(who) + " requires an irreducible graph");
  }
}

}  // namespace

PotentialVector PotentialVector::constant(const WeightedDigraph& graph,
                                          int depth, double c) {
  if (depth != 1 && depth != 2) throw DomainError("potential depth must be 1 or 2");
  std::size_t size = depth == 1 ? graph.vertex_words.size() : graph.edges.size();
  return {depth, std::vector<double>(size, c)};
}

void validate_potential(const PotentialVector& phi, const WeightedDigraph& graph) {
  if (phi.depth != 1 && phi.depth != 2) {
    throw DomainError("potential depth must be 1 or 2");
  }
  std::size_t expected =
      phi.depth == 1 ? graph.vertex_words.size() : graph.edges.size();
  if (phi.values.size() != expected) {
    throw DomainError("potential vector size does not match the graph");
  }
}

PotentialVector lift_to_edges(const PotentialVector& phi,
                              const WeightedDigraph& graph) {
  validate_potential(phi, graph);
  if (phi.depth == 2) return phi;
  std::vector<double> vals(graph.edge_count());
  for (int e = 0; e < graph.edge_count(); ++e) {
    vals[e] = phi.values[graph.edges[e].first];
  }
  return PotentialVector::edge(std::move(vals));
}

bool is_irreducible(const WeightedDigraph& graph) {
  detail::EdgeGraph g;
  g.n = graph.vertex_count();
  g.out.resize(g.n);
  for (auto [u, v] : graph.edges) g.out[u].emplace_back(v, 0.0);
  return detail::strongly_connected_components(g).size() == 1;
}

void MarkovMeasure::validate(const WeightedDigraph& graph, double tol) const {
  const int n = graph.vertex_count();
  if (static_cast<int>(stationary.size()) != n ||
      static_cast<int>(transitions.size()) != n) {
    throw DomainError("measure dimensions do not match the graph");
  }
  double total = 0.0;
  for (double p : stationary) {
    if (p < -1e-12) throw DomainError("negative stationary probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("stationary distribution does not sum to 1");
  }
  for (int u = 0; u < n; ++u) {
    double row = 0.0;
    for (int v = 0; v < n; ++v) {
      double p = transitions[u][v];
      if (p < -1e-12) throw DomainError("negative transition probability");
      if (p > 1e-12 && graph.edge_index(u, v) < 0) {
        throw DomainError("transition mass on a forbidden edge");
      }
      row += p;
    }
    if (stationary[u] > 1e-12 && std::abs(row - 1.0) > 1e-10) {
      throw DomainError("transition matrix is not row-stochastic");
    }
  }
  for (int v = 0; v < n; ++v) {
    double in_flow = 0.0;
    for (int u = 0; u < n; ++u) in_flow += stationary[u] * transitions[u][v];
    if (std::abs(in_flow - stationary[v]) > tol) {
      throw DomainError("distribution is not stationary for the chain");
    }
  }
}

std::vector<double> edge_occupation(const MarkovMeasure& mu,
                                    const WeightedDigraph& graph) {
  std::vector<double> nu(graph.edge_count());
  for (int e = 0; e < graph.edge_count(); ++e) {
    auto [u, v] = graph.edges[e];
    nu[e] = mu.stationary[u] * mu.transitions[u][v];
  }
  return nu;
}

double pairing(const PotentialVector& phi, const MarkovMeasure& mu,
               const WeightedDigraph& graph) {
  validate_potential(phi, graph);
  std::vector<double> nu = edge_occupation(mu, graph);
  double total = 0.0;
  for (int e = 0; e < graph.edge_count(); ++e) {
    total += nu[e] * edge_value(phi, graph, e);
  }
  return total;
}

double spectral_pressure(const WeightedDigraph& graph,
                         const PotentialVector& phi) {
  validate_potential(phi, graph);
  require_irreducible(graph, "spectral pressure");
  auto pair = detail::power_perron(weighted_matrix(graph, phi), kPowerTol,
                                   kPowerIters);
  return std::log(pair.value);
}

double sup_pressure(const WeightedDigraph& graph, const PotentialVector& phi) {
  validate_potential(phi, graph);
  return *std::max_element(phi.values.begin(), phi.values.end());
}

double max_ergodic_pressure(const WeightedDigraph& graph,
                            const PotentialVector& phi) {
  validate_potential(phi, graph);
  detail::EdgeGraph g;
  g.n = graph.vertex_count();
  g.out.resize(g.n);
  for (int e = 0; e < graph.edge_count(); ++e) {
    g.out[graph.edges[e].first].emplace_back(graph.edges[e].second,
                                             edge_value(phi, graph, e));
  }
  return detail::karp_max_mean(g);
}

PressureFunction::PressureFunction(Kind kind, const WeightedDigraph& graph)
    : kind_(kind), graph_(&graph) {
  if (kind_ == Kind::spectral) require_irreducible(graph, "spectral pressure");
}

double PressureFunction::operator()(const PotentialVector& phi) const {
  switch (kind_) {
    case Kind::spectral:
      return spectral_pressure(*graph_, phi);
    case Kind::sup_norm:
      return sup_pressure(*graph_, phi);
    case Kind::max_ergodic:
      return max_ergodic_pressure(*graph_, phi);
  }
  throw InternalError("unknown pressure kind");
}

std::string PressureFunction::name() const {
  switch (kind_) {
    case Kind::spectral:
      return "spectral";
    case Kind::sup_norm:
      return "sup_norm";
    case Kind::max_ergodic:
      return "max_ergodic";
  }
  return "?";
}

namespace {

PotentialVector add_constant(const PotentialVector& phi, double c) {
  PotentialVector out = phi;
  for (double& v : out.values) v += c;
  return out;
}

PotentialVector combine(const PotentialVector& a, const PotentialVector& b,
                        double lam) {
  PotentialVector out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    out.values[i] = lam * a.values[i] + (1.0 - lam) * b.values[i];
  }
  return out;
}

// Vertex function used as a cohomology witness, read off the sample.
std::vector<double> derive_vertex_function(const PotentialVector& phi,
                                           const WeightedDigraph& graph) {
  std::vector<double> psi(graph.vertex_count(), 0.0);
  if (phi.depth == 1) {
    psi = phi.values;
  } else {
    for (int e = 0; e < graph.edge_count(); ++e) {
      int u = graph.edges[e].first;
      if (psi[u] == 0.0) psi[u] = phi.values[e];
    }
  }
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = 0.5 * psi[i] + 0.1 * i;
  return psi;
}

PotentialVector coboundary_perturbed(const PotentialVector& phi,
                                     const std::vector<double>& psi,
                                     const WeightedDigraph& graph, double sign) {
  PotentialVector lifted = lift_to_edges(phi, graph);
  for (int e = 0; e < graph.edge_count(); ++e) {
    auto [u, v] = graph.edges[e];
    lifted.values[e] += sign * (psi[v] - psi[u]);
  }
  return lifted;
}

}  // namespace

AxiomReport axiom_check(
    const PressureFunction& gamma,
    const std::vector<std::pair<PotentialVector, PotentialVector>>& samples,
    const std::vector<double>& lambdas, double tol) {
  if (samples.size() < 2) throw DomainError("axiom_check needs >= 2 samples");
  const WeightedDigraph& graph = gamma.graph();
  AxiomReport report;
  if (gamma.kind() != PressureFunction::Kind::sup_norm) report.c4_ok = true;

  auto record = [&](bool& ok, double& worst, double violation, const char* axiom,
                    int index) {
    worst = std::max(worst, violation);
    if (violation > tol && ok) {
      ok = false;
      if (report.failing_sample < 0) {
        report.failing_sample = index;
        report.failing_axiom = axiom;
      }
    }
  };

  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& [phi, psi] = samples[i];
    validate_potential(phi, graph);
    validate_potential(psi, graph);
    if (phi.depth != psi.depth) {
      throw DomainError("sample pair depths must match");
    }
    double g_phi = gamma(phi);
    double g_psi = gamma(psi);

    // C1 on the dominating envelope phi v psi.
    PotentialVector upper = phi;
    for (std::size_t j = 0; j < upper.values.size(); ++j) {
      upper.values[j] = std::max(phi.values[j], psi.values[j]);
    }
    double g_up = gamma(upper);
    record(report.c1_ok, report.c1_violation, g_phi - g_up, "C1",
           static_cast<int>(i));
    record(report.c1_ok, report.c1_violation, g_psi - g_up, "C1",
           static_cast<int>(i));

    for (double c : {-2.0, -0.5, 1.0, 3.0}) {
      record(report.c2_ok, report.c2_violation,
             std::abs(gamma(add_constant(phi, c)) - (g_phi + c)), "C2",
             static_cast<int>(i));
    }

    for (double lam : lambdas) {
      if (lam < 0.0 || lam > 1.0) throw DomainError("lambda grid must be in [0,1]");
      double lhs = gamma(combine(phi, psi, lam));
      record(report.c3_ok, report.c3_violation,
             lhs - (lam * g_phi + (1.0 - lam) * g_psi), "C3",
             static_cast<int>(i));
    }

    if (report.c4_ok.has_value()) {
      std::vector<double> witness = derive_vertex_function(phi, graph);
      double base = gamma(lift_to_edges(phi, graph));
      for (double sign : {1.0, -1.0}) {
        double perturbed = gamma(coboundary_perturbed(phi, witness, graph, sign));
        record(*report.c4_ok, report.c4_violation, std::abs(perturbed - base),
               "C4", static_cast<int>(i));
      }
    }
  }
  return report;
}

MarkovMeasure gibbs_chain(const WeightedDigraph& graph,
                          const PotentialVector& phi) {
  validate_potential(phi, graph);
  require_irreducible(graph, "gibbs_chain");
  detail::Matrix m = weighted_matrix(graph, phi);
  auto right = detail::power_perron(m, kPowerTol, kPowerIters);
  auto left = detail::power_perron(detail::transpose(m), kPowerTol, kPowerIters);
  const int n = graph.vertex_count();

  MarkovMeasure mu;
  mu.transitions.assign(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u) {
    double row = 0.0;
    for (int v = 0; v < n; ++v) {
      if (m[u][v] > 0.0) {
        mu.transitions[u][v] = m[u][v] * right.right[v] / (right.value * right.right[u]);
        row += mu.transitions[u][v];
      }
    }
    for (int v = 0; v < n; ++v) mu.transitions[u][v] /= row;
  }
  mu.stationary.resize(n);
  double total = 0.0;
  for (int u = 0; u < n; ++u) {
    mu.stationary[u] = left.right[u] * right.right[u];
    total += mu.stationary[u];
  }
  for (double& p : mu.stationary) p /= total;
  return mu;
}

double markov_entropy(const MarkovMeasure& mu) {
  double h = 0.0;
  for (std::size_t u = 0; u < mu.stationary.size(); ++u) {
    for (double p : mu.transitions[u]) {
      if (p > 0.0) h -= mu.stationary[u] * p * std::log(p);
    }
  }
  return h;
}

MarkovMeasure random_markov_measure(const WeightedDigraph& graph,
                                    std::mt19937& rng) {
  require_irreducible(graph, "random_markov_measure");
  const int n = graph.vertex_count();
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  MarkovMeasure mu;
  mu.transitions.assign(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u) {
    double row = 0.0;
    for (int v : graph.out[u]) {
      mu.transitions[u][v] = std::exp(unif(rng));
      row += mu.transitions[u][v];
    }
    for (int v : graph.out[u]) mu.transitions[u][v] /= row;
  }
  mu.stationary = detail::stationary_of(mu.transitions);
  return mu;
}

Vp1Report vp1_check(const WeightedDigraph& graph, const PotentialVector& phi,
                    int random_measures, unsigned seed) {
  Vp1Report report;
  report.lhs = spectral_pressure(graph, phi);
  MarkovMeasure gibbs = gibbs_chain(graph, phi);
  report.entropy = markov_entropy(gibbs);
  report.pairing = pairing(phi, gibbs, graph);
  report.rhs = report.entropy + report.pairing;
  report.gap = std::abs(report.lhs - report.rhs);

  std::mt19937 rng(seed);
  report.random_count = random_measures;
  for (int i = 0; i < random_measures; ++i) {
    MarkovMeasure mu = random_markov_measure(graph, rng);
    double rhs = markov_entropy(mu) + pairing(phi, mu, graph);
    report.max_random_excess =
        std::max(report.max_random_excess, rhs - report.lhs);
  }
  return report;
}

Vp2Result entropy_via_vp2(const WeightedDigraph& graph,
                          const MarkovMeasure& target, double tol,
                          long long max_iter) {
  target.validate(graph);
  require_irreducible(graph, "entropy_via_vp2");
  std::vector<double> nu = edge_occupation(target, graph);
  const int ne = graph.edge_count();

  auto objective = [&](const PotentialVector& phi) {
    double value = spectral_pressure(graph, phi);
    for (int e = 0; e < ne; ++e) value -= nu[e] * phi.values[e];
    return value;
  };

  // Edges with no target mass belong to the boundary of the occupation
  // polytope: the infimum sends their potentials to -infinity, so they start
  // at the cap and the value is reported with the boundary flag.
  PotentialVector phi = PotentialVector::constant(graph, 2, 0.0);
  bool boundary_target = false;
  for (int e = 0; e < ne; ++e) {
    if (nu[e] <= 0.0) {
      phi.values[e] = -kPotentialCap;
      boundary_target = true;
    }
  }
  double g = objective(phi);
  double step = 0.5;
  Vp2Result result;
  result.boundary_capped = boundary_target;

  for (result.iterations = 0; result.iterations < max_iter; ++result.iterations) {
    std::vector<double> occupation = edge_occupation(gibbs_chain(graph, phi), graph);
    double gnorm = 0.0;
    std::vector<double> grad(ne);
    for (int e = 0; e < ne; ++e) {
      grad[e] = occupation[e] - nu[e];
      gnorm = std::max(gnorm, std::abs(grad[e]));
    }
    result.gradient_norm = gnorm;
    if (gnorm <= tol) {
      result.converged = true;
      break;
    }
    PotentialVector trial = phi;
    for (int e = 0; e < ne; ++e) {
      trial.values[e] =
          std::clamp(phi.values[e] - step * grad[e], -kPotentialCap, kPotentialCap);
    }
    double gt = objective(trial);
    if (gt <= g) {
      phi = std::move(trial);
      g = gt;
    } else {
      step *= 0.5;
      if (step < 1e-13) break;  // stalled; report the gradient norm as is
    }
  }

  result.value = g;
  for (double v : phi.values) {
    if (std::abs(v) >= kPotentialCap - 1e-9) result.boundary_capped = true;
  }
  // Exhausting the budget on an interior target is a genuine failure;
  // boundary targets legitimately terminate at the cap.
  if (!result.converged && !result.boundary_capped &&
      result.iterations >= max_iter) {
    throw InternalError("entropy_via_vp2: no convergence in " +
                        std::to_string(max_iter) + " iterations (grad norm " +
                        std::to_string(result.gradient_norm) + ")");
  }
  return result;
}

bool in_admissible_set(const PressureFunction& gamma, const PotentialVector& xi,
                       double tol, double* gamma_of_neg) {
  PotentialVector neg = xi;
  for (double& v : neg.values) v = -v;
  double value = gamma(neg);
  if (gamma_of_neg != nullptr) *gamma_of_neg = value;
  return value <= tol;
}

PotentialVector parse_potential_vector(const std::string& text,
                                       const WeightedDigraph& graph) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed potential document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("depth")) {
    throw ParseError("potential document needs a 'depth' field");
  }
  int depth = doc["depth"].get<int>();
  if (depth != 1 && depth != 2) throw ParseError("potential depth must be 1 or 2");
  double fallback = doc.value("default", 0.0);

  PotentialVector phi = PotentialVector::constant(graph, depth, fallback);
  if (doc.contains("entries")) {
    if (!doc["entries"].is_object()) throw ParseError("'entries' must be an object");
    for (const auto& [key, val] : doc["entries"].items()) {
      if (!val.is_number()) throw ParseError("entry values must be numbers");
      bool found = false;
      if (depth == 1) {
        for (int v = 0; v < graph.vertex_count(); ++v) {
          if (graph.vertex_label(v) == key) {
            phi.values[v] = val.get<double>();
            found = true;
          }
        }
      } else {
        for (int e = 0; e < graph.edge_count(); ++e) {
          if (graph.edge_label(e) == key) {
            phi.values[e] = val.get<double>();
            found = true;
          }
        }
      }
      if (!found) throw ParseError("unknown vertex/edge label '" + key + "'");
    }
  }
  return phi;
}

MarkovMeasure parse_markov_measure(const std::string& text,
                                   const WeightedDigraph& graph) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed measure document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("stationary") || !doc.contains("transitions")) {
    throw ParseError("measure document needs 'stationary' and 'transitions'");
  }
  const int n = graph.vertex_count();
  auto vertex_by_label = [&](const std::string& label) {
    for (int v = 0; v < n; ++v) {
      if (graph.vertex_label(v) == label) return v;
    }
    throw ParseError("unknown vertex label '" + label + "'");
  };

  MarkovMeasure mu;
  mu.stationary.assign(n, 0.0);
  mu.transitions.assign(n, std::vector<double>(n, 0.0));
  for (const auto& [key, val] : doc["stationary"].items()) {
    mu.stationary[vertex_by_label(key)] = val.get<double>();
  }
  for (const auto& [from, row] : doc["transitions"].items()) {
    int u = vertex_by_label(from);
    for (const auto& [to, val] : row.items()) {
      mu.transitions[u][vertex_by_label(to)] = val.get<double>();
    }
  }
  mu.validate(graph);
  return mu;
}

}  // namespace ergomax
