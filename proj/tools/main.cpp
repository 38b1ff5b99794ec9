// ergomax command line: batch front end over the library. Every command
// emits a JSON run report (command, echoed inputs, results, tolerances,
// timestamp); table-shaped payloads can be emitted as CSV instead.
//
// Exit codes: 0 success, 2 parse error, 3 degenerate input,
// 4 domain violation, 5 internal identity failure.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergomax/averages.hpp"
#include "ergomax/bilinear.hpp"
#include "ergomax/convex.hpp"
#include "ergomax/pressure.hpp"
#include "ergomax/subaction.hpp"
#include "ergomax/symbolic.hpp"
#include "ergomax/three_symbol_example.hpp"
#include "ergomax/tolerances.hpp"

namespace {

using ergomax::EventuallyPeriodicPoint;
using ergomax::SubshiftSystem;
using ergomax::WeightedDigraph;
using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ergomax::ParseError("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", &tm);
  return buf;
}

json report_skeleton(const std::string& command, json inputs,
                     const ergomax::Tolerances& tol) {
  json report;
  report["command"] = command;
  report["inputs"] = std::move(inputs);
  report["results"] = json::object();
  json tols = json::object();
  for (const auto& [name, value] : tol.all()) tols[name] = value;
  report["tolerances"] = std::move(tols);
  report["timestamp"] = iso8601_now();
  return report;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json profile_to_json(const ergomax::TimeAverageProfile& profile,
                     const SubshiftSystem& system) {
  json j;
  j["point"] = ergomax::point_to_string(profile.point, system);
  j["inf_over_n"] = profile.inf_over_n;
  if (profile.inf_attained_at) {
    j["inf_attained_at"] = *profile.inf_attained_at;
  } else {
    j["inf_attained_at"] = nullptr;
  }
  j["liminf"] = profile.liminf;
  j["limsup"] = profile.limsup;
  j["sup_over_n"] = profile.sup_over_n;
  return j;
}

json alpha_to_json(const ergomax::AlphaResult& alpha, const WeightedDigraph& graph) {
  json j;
  j["value"] = alpha.value;
  json witness = json::array();
  for (int v : alpha.witness_cycle) witness.push_back(graph.vertex_label(v));
  j["witness_cycle"] = std::move(witness);
  j["method"] =
      alpha.method == ergomax::AlphaResult::Method::karp ? "karp" : "brute_force";
  return j;
}

struct CommonOptions {
  std::vector<std::string> tol_overrides;
  ergomax::Tolerances tolerances() const {
    ergomax::Tolerances tol;
    if (const char* env = std::getenv("ERGOMAX_TOL_OVERRIDES")) {
      tol.apply_overrides(env);
    }
    for (const std::string& item : tol_overrides) tol.apply_overrides(item);
    return tol;
  }
};

int run_alpha(const std::string& system_path, const std::string& method,
              const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  std::string text = read_file(system_path);
  SubshiftSystem system = ergomax::parse_system(text);
  WeightedDigraph graph = ergomax::trim_and_recode(system);
  ergomax::AlphaResult alpha = method == "brute"
                                   ? ergomax::alpha_bruteforce(graph)
                                   : ergomax::alpha_karp(graph);
  json report =
      report_skeleton("alpha", {{"system", json::parse(text)}, {"method", method}}, tol);
  report["results"] = alpha_to_json(alpha, graph);
  emit(report);
  return 0;
}

int run_paper_example(double a, int horizon, bool csv,
                      const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  ergomax::ThreeSymbolReport r =
      ergomax::three_symbol_report(a, horizon, tol.get("identity"));
  SubshiftSystem system = ergomax::three_symbol_system(a);

  if (csv) {
    std::printf("n,%s,%s,%s,horizon_sup\n", r.points[0].label.c_str(),
                r.points[1].label.c_str(), r.points[2].label.c_str());
    for (int n = 1; n <= r.horizon; ++n) {
      std::printf("%d,%.17g,%.17g,%.17g,%.17g\n", n, r.points[0].averages[n - 1],
                  r.points[1].averages[n - 1], r.points[2].averages[n - 1],
                  r.horizon_sups[n - 1]);
    }
    std::printf("alpha,%.17g\ninf_n_sup_x,%.17g\nsup_x_inf_n,%.17g\n"
                "sup_sup,%.17g\ninf_inf,%.17g\n",
                r.alpha, r.inf_n_sup_x, r.sup_x_inf_n, r.sup_sup, r.inf_inf);
    return 0;
  }

  json results;
  results["alpha"] = r.alpha;
  results["inf_n_sup_x"] = r.inf_n_sup_x;
  results["inf_n_sup_x_attained"] = r.inf_n_sup_x_attained;
  results["sup_x_inf_n"] = r.sup_x_inf_n;
  results["sup_sup"] = r.sup_sup;
  results["inf_inf"] = r.inf_inf;
  results["horizon_sups"] = r.horizon_sups;
  json points = json::array();
  for (const auto& series : r.points) {
    json p;
    p["label"] = series.label;
    p["averages"] = series.averages;
    p["profile"] = profile_to_json(series.profile, system);
    points.push_back(std::move(p));
  }
  results["points"] = std::move(points);
  results["identities_hold"] = r.identities_hold;

  json report = report_skeleton(
      "paper-example", {{"a", a}, {"horizon", horizon}}, tol);
  report["results"] = std::move(results);
  emit(report);
  return 0;
}

int run_horizons(const std::string& system_path, int big_n, bool csv,
                 const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  std::string text = read_file(system_path);
  SubshiftSystem system = ergomax::parse_system(text);
  WeightedDigraph graph = ergomax::trim_and_recode(system);
  ergomax::HorizonTable table = ergomax::horizon_table(graph, big_n);

  if (csv) {
    std::printf("n,sup_value\n");
    for (const auto& [n, v] : table.rows) std::printf("%d,%.17g\n", n, v);
    std::printf("inf,%.17g\nerror_bound,%.17g\n", table.running_inf,
                table.error_bound);
    return 0;
  }
  json rows = json::array();
  for (const auto& [n, v] : table.rows) rows.push_back({{"n", n}, {"sup_value", v}});
  json report = report_skeleton(
      "horizons", {{"system", json::parse(text)}, {"N", big_n}}, tol);
  report["results"] = {{"rows", std::move(rows)},
                       {"running_inf", table.running_inf},
                       {"error_bound", table.error_bound}};
  emit(report);
  return 0;
}

int run_point(const std::string& system_path, const std::string& point_text,
              const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  std::string text = read_file(system_path);
  SubshiftSystem system = ergomax::parse_system(text);
  EventuallyPeriodicPoint point = ergomax::parse_point(point_text, system);
  ergomax::TimeAverageProfile profile =
      ergomax::exact_inf_time_average(point, system);
  json report = report_skeleton(
      "point", {{"system", json::parse(text)}, {"point", point_text}}, tol);
  report["results"] = profile_to_json(profile, system);
  emit(report);
  return 0;
}

int run_subaction(const std::string& system_path, const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  std::string text = read_file(system_path);
  SubshiftSystem system = ergomax::parse_system(text);
  WeightedDigraph graph = ergomax::trim_and_recode(system);
  ergomax::SubActionSolution sol = ergomax::solve_subaction(graph);
  ergomax::DualityReport duality = ergomax::verify_duality(graph);

  json psi = json::object();
  for (int v = 0; v < graph.vertex_count(); ++v) {
    psi[graph.vertex_label(v)] = sol.psi[v];
  }
  json tight = json::array();
  for (int e = 0; e < graph.edge_count(); ++e) {
    if (sol.slack[e] <= tol.get("feasibility")) {
      tight.push_back({graph.vertex_label(graph.edges[e].first),
                       graph.vertex_label(graph.edges[e].second)});
    }
  }
  json report =
      report_skeleton("subaction", {{"system", json::parse(text)}}, tol);
  report["results"] = {{"alpha", duality.alpha},
                       {"dual_value", sol.dual_value},
                       {"gap", duality.gap},
                       {"max_violation", duality.max_violation},
                       {"psi", std::move(psi)},
                       {"tight_edges", std::move(tight)}};
  emit(report);
  return 0;
}

ergomax::PotentialVector load_phi(const std::string& phi_path,
                                  const WeightedDigraph& graph) {
  if (phi_path.empty()) {
    // Default: the system's own potential as a vertex vector.
    return ergomax::PotentialVector::vertex(graph.vertex_weight);
  }
  return ergomax::parse_potential_vector(read_file(phi_path), graph);
}

int run_pressure(const std::string& system_path, const std::string& phi_path,
                 const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  std::string text = read_file(system_path);
  SubshiftSystem system = ergomax::parse_system(text);
  WeightedDigraph graph = ergomax::trim_and_recode(system);
  ergomax::PotentialVector phi = load_phi(phi_path, graph);

  double gamma = ergomax::spectral_pressure(graph, phi);
  ergomax::Vp1Report vp1 = ergomax::vp1_check(graph, phi);
  json report = report_skeleton(
      "pressure",
      {{"system", json::parse(text)}, {"phi", phi_path.empty() ? "system potential" : phi_path}},
      tol);
  report["results"] = {{"gamma", gamma},
                       {"vp1",
                        {{"lhs", vp1.lhs},
                         {"rhs", vp1.rhs},
                         {"gap", vp1.gap},
                         {"entropy", vp1.entropy},
                         {"pairing", vp1.pairing},
                         {"max_random_excess", vp1.max_random_excess}}}};
  emit(report);
  if (vp1.gap > tol.get("vp1_gap")) {
    throw ergomax::InternalError("VP1 gap exceeds tolerance");
  }
  return 0;
}

ergomax::MarkovMeasure named_measure(const std::string& spec,
                                     const WeightedDigraph& graph) {
  if (spec == "parry") {
    return ergomax::gibbs_chain(graph,
                                ergomax::PotentialVector::constant(graph, 1, 0.0));
  }
  if (spec.rfind("iid:", 0) == 0) {
    std::stringstream ss(spec.substr(4));
    std::vector<double> probs;
    std::string tok;
    while (std::getline(ss, tok, ',')) probs.push_back(std::stod(tok));
    const int n = graph.vertex_count();
    if (static_cast<int>(probs.size()) != n) {
      throw ergomax::DomainError("iid spec needs one probability per vertex");
    }
    if (static_cast<int>(graph.edges.size()) != n * n) {
      throw ergomax::DomainError("iid measures need the full shift");
    }
    ergomax::MarkovMeasure mu;
    mu.stationary = probs;
    mu.transitions.assign(n, probs);
    mu.validate(graph);
    return mu;
  }
  return ergomax::parse_markov_measure(read_file(spec), graph);
}

int run_entropy(const std::string& system_path, const std::string& target_spec,
                long long max_iter, const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  std::string text = read_file(system_path);
  SubshiftSystem system = ergomax::parse_system(text);
  WeightedDigraph graph = ergomax::trim_and_recode(system);
  ergomax::MarkovMeasure target = named_measure(target_spec, graph);

  double analytic = ergomax::markov_entropy(target);
  ergomax::Vp2Result vp2 =
      ergomax::entropy_via_vp2(graph, target, tol.get("vp2_tol"), max_iter);
  json report = report_skeleton(
      "entropy", {{"system", json::parse(text)}, {"target", target_spec}}, tol);
  report["results"] = {{"entropy_vp2", vp2.value},
                       {"entropy_analytic", analytic},
                       {"difference", vp2.value - analytic},
                       {"gradient_norm", vp2.gradient_norm},
                       {"iterations", vp2.iterations},
                       {"converged", vp2.converged},
                       {"boundary_capped", vp2.boundary_capped}};
  emit(report);
  return 0;
}

json grid_function_to_json(const ergomax::GridConvexFunction& f) {
  json values = json::array();
  for (const auto& v : f.values) {
    if (v.finite()) {
      values.push_back(v.value());
    } else {
      values.push_back("inf");
    }
  }
  return {{"grids", f.grids}, {"values", std::move(values)}};
}

int run_fenchel(const std::string& input_path, const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  std::string text = read_file(input_path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ergomax::ParseError(std::string("malformed fenchel input: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type")) {
    throw ergomax::ParseError("fenchel input needs a 'type' field");
  }
  json report = report_skeleton("fenchel", {{"input", json::parse(text)}}, tol);
  std::string type = doc["type"].get<std::string>();
  if (type == "fr") {
    if (!doc.contains("f") || !doc.contains("g") || !doc.contains("dual_grids")) {
      throw ergomax::ParseError("fr input needs 'f', 'g' and 'dual_grids'");
    }
    ergomax::GridConvexFunction f = ergomax::parse_grid_function(doc["f"].dump());
    ergomax::GridConvexFunction g = ergomax::parse_grid_function(doc["g"].dump());
    auto duals = doc["dual_grids"].get<std::vector<std::vector<double>>>();
    ergomax::FenchelRockafellarReport fr = ergomax::fr_duality_gap(f, g, duals);
    report["results"] = {{"primal", fr.primal},
                         {"dual", fr.dual},
                         {"gap", fr.gap},
                         {"qualified", fr.qualified},
                         {"tolerance", fr.tolerance},
                         {"f_star", grid_function_to_json(ergomax::conjugate(f, duals))}};
  } else if (type == "game") {
    if (!doc.contains("game")) throw ergomax::ParseError("game input needs 'game'");
    ergomax::BilinearGame game = ergomax::parse_bilinear_game(doc["game"].dump());
    ergomax::BilinearReport b = ergomax::bilinear_minimax(game);
    report["results"] = {{"sup_inf", b.sup_inf},
                         {"inf_sup", b.inf_sup},
                         {"gap", b.gap},
                         {"exact", b.exact},
                         {"optimal_mu", b.optimal_mu},
                         {"optimal_t", b.optimal_t}};
  } else {
    throw ergomax::ParseError("fenchel type must be 'fr' or 'game'");
  }
  emit(report);
  return 0;
}

int run_axioms(const std::string& system_path, const std::string& kind,
               int samples, unsigned seed, const CommonOptions& common) {
  ergomax::Tolerances tol = common.tolerances();
  std::string text = read_file(system_path);
  SubshiftSystem system = ergomax::parse_system(text);
  WeightedDigraph graph = ergomax::trim_and_recode(system);

  std::vector<ergomax::PressureFunction::Kind> kinds;
  if (kind == "spectral" || kind == "all") {
    kinds.push_back(ergomax::PressureFunction::Kind::spectral);
  }
  if (kind == "sup" || kind == "all") {
    kinds.push_back(ergomax::PressureFunction::Kind::sup_norm);
  }
  if (kind == "max_ergodic" || kind == "all") {
    kinds.push_back(ergomax::PressureFunction::Kind::max_ergodic);
  }
  if (kinds.empty()) {
    throw ergomax::DomainError("kind must be spectral|sup|max_ergodic|all");
  }

  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<std::pair<ergomax::PotentialVector, ergomax::PotentialVector>> pairs;
  for (int i = 0; i < samples; ++i) {
    ergomax::PotentialVector a = ergomax::PotentialVector::constant(graph, 1, 0.0);
    ergomax::PotentialVector b = a;
    for (double& v : a.values) v = unif(rng);
    for (double& v : b.values) v = unif(rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }
  std::vector<double> lambdas = {0.0, 0.25, 0.5, 0.75, 1.0};

  json results = json::object();
  bool all_ok = true;
  for (auto k : kinds) {
    ergomax::PressureFunction gamma(k, graph);
    ergomax::AxiomReport ax =
        ergomax::axiom_check(gamma, pairs, lambdas, tol.get("axiom"));
    json jx = {{"c1_ok", ax.c1_ok},
               {"c2_ok", ax.c2_ok},
               {"c3_ok", ax.c3_ok},
               {"c1_violation", ax.c1_violation},
               {"c2_violation", ax.c2_violation},
               {"c3_violation", ax.c3_violation}};
    if (ax.c4_ok.has_value()) {
      jx["c4_ok"] = *ax.c4_ok;
      jx["c4_violation"] = ax.c4_violation;
    }
    if (!ax.all_ok()) {
      jx["failing_axiom"] = ax.failing_axiom;
      jx["failing_sample"] = ax.failing_sample;
      all_ok = false;
    }
    results[gamma.name()] = std::move(jx);
  }
  json report = report_skeleton(
      "axioms",
      {{"system", json::parse(text)}, {"kind", kind}, {"samples", samples}, {"seed", seed}},
      tol);
  report["results"] = std::move(results);
  emit(report);
  if (!all_ok) {
    throw ergomax::InternalError("a pressure axiom failed; this is a bug");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ergodic-optimization minimax toolkit"};
  app.require_subcommand(1);
  CommonOptions common;
  app.add_option("--tol", common.tol_overrides,
                 "tolerance override name=value (repeatable)");

  std::string system_path, method = "karp", point_text, phi_path, input_path;
  std::string target_spec = "parry", kind = "all";
  double a = 0.25;
  int horizon = 12, big_n = 10, samples = 50;
  long long max_iter = 50000;
  unsigned seed = 7;
  bool csv = false;

  CLI::App* cmd_alpha = app.add_subcommand("alpha", "maximum ergodic average");
  cmd_alpha->add_option("--system", system_path, "system JSON file")->required();
  cmd_alpha->add_option("--method", method, "karp|brute")
      ->check(CLI::IsMember({"karp", "brute"}));

  CLI::App* cmd_paper = app.add_subcommand(
      "paper-example", "three-symbol worked example, parameterized by a");
  cmd_paper->add_option("--a", a, "potential value of symbol a")->required();
  cmd_paper->add_option("--horizon", horizon, "series length (default 12)");
  cmd_paper->add_flag("--csv", csv, "emit the per-n series as CSV");

  CLI::App* cmd_horizons = app.add_subcommand("horizons", "sup_x S_n/n table");
  cmd_horizons->add_option("--system", system_path, "system JSON file")->required();
  cmd_horizons->add_option("--N", big_n, "table length")->required();
  cmd_horizons->add_flag("--csv", csv, "emit CSV instead of JSON");

  CLI::App* cmd_point = app.add_subcommand("point", "exact time-average profile");
  cmd_point->add_option("--system", system_path, "system JSON file")->required();
  cmd_point->add_option("--point", point_text, "point as \"pre|period\"")->required();

  CLI::App* cmd_sub = app.add_subcommand("subaction", "coboundary dual solve");
  cmd_sub->add_option("--system", system_path, "system JSON file")->required();

  CLI::App* cmd_pressure =
      app.add_subcommand("pressure", "spectral pressure and VP1 check");
  cmd_pressure->add_option("--system", system_path, "system JSON file")->required();
  cmd_pressure->add_option("--phi", phi_path, "potential vector JSON file");

  CLI::App* cmd_entropy =
      app.add_subcommand("entropy", "entropy as the VP2 conjugate");
  cmd_entropy->add_option("--system", system_path, "system JSON file")->required();
  cmd_entropy->add_option("--target", target_spec,
                          "parry | iid:p1,p2,... | measure JSON file");
  cmd_entropy->add_option("--max-iter", max_iter, "descent iteration cap");

  CLI::App* cmd_fenchel =
      app.add_subcommand("fenchel", "Fenchel-Rockafellar gap or bilinear game");
  cmd_fenchel->add_option("--input", input_path, "instance JSON file")->required();

  CLI::App* cmd_axioms = app.add_subcommand("axioms", "pressure axiom suite");
  cmd_axioms->add_option("--system", system_path, "system JSON file")->required();
  cmd_axioms->add_option("--kind", kind, "spectral|sup|max_ergodic|all");
  cmd_axioms->add_option("--samples", samples, "random sample pairs");
  cmd_axioms->add_option("--seed", seed, "sample seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_alpha->parsed()) return run_alpha(system_path, method, common);
    if (cmd_paper->parsed()) return run_paper_example(a, horizon, csv, common);
    if (cmd_horizons->parsed()) return run_horizons(system_path, big_n, csv, common);
    if (cmd_point->parsed()) return run_point(system_path, point_text, common);
    if (cmd_sub->parsed()) return run_subaction(system_path, common);
    if (cmd_pressure->parsed()) return run_pressure(system_path, phi_path, common);
    if (cmd_entropy->parsed()) {
      return run_entropy(system_path, target_spec, max_iter, common);
    }
    if (cmd_fenchel->parsed()) return run_fenchel(input_path, common);
    if (cmd_axioms->parsed()) {
      return run_axioms(system_path, kind, samples, seed, common);
    }
  } catch (const ergomax::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ergomax::EmptySubshiftError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 3;
  } catch (const ergomax::DomainError& e) {
    std::cerr << "domain violation: " << e.what() << "\n";
    return 4;
  } catch (const ergomax::InternalError& e) {
    std::cerr << "internal identity failure: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
