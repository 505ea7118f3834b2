#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fpconvex/convexity.hpp"
#include "fpconvex/counterexample.hpp"
#include "fpconvex/geodesics.hpp"
#include "output.hpp"
#include "parallel.hpp"

namespace fpconvex::cli {

namespace {

Json property_results(const PropertyReport& report) {
  Json out = Json::array();
  for (const auto& r : report.results) {
    Json item;
    item["name"] = r.name;
    item["passed"] = r.passed;
    item["residual"] = number_or_null(r.residual);
    item["tolerance"] = number_or_null(r.tolerance);
    item["witness"] = to_json(r.witness);
    out.push_back(std::move(item));
  }
  return out;
}

/// Merges reports result-by-name in order of first appearance: worst residual,
/// overall pass flag and the first failing witness.
Json merge_property_reports(const std::vector<PropertyReport>& reports) {
  std::vector<std::string> order;
  std::map<std::string, PropertyResult> merged;
  std::map<std::string, std::size_t> counts;
  for (const auto& report : reports) {
    for (const auto& r : report.results) {
      auto it = merged.find(r.name);
      if (it == merged.end()) {
        order.push_back(r.name);
        merged[r.name] = r;
        counts[r.name] = 1;
        continue;
      }
      PropertyResult& m = it->second;
      ++counts[r.name];
      if (m.passed && !r.passed) m.witness = r.witness;
      m.passed = m.passed && r.passed;
      m.residual = std::max(m.residual, r.residual);
      m.tolerance = std::max(m.tolerance, r.tolerance);
    }
  }
  Json out = Json::array();
  for (const auto& name : order) {
    const PropertyResult& r = merged[name];
    Json item;
    item["name"] = name;
    item["checks"] = counts[name];
    item["passed"] = r.passed;
    item["worst_residual"] = number_or_null(r.residual);
    item["tolerance"] = number_or_null(r.tolerance);
    item["witness"] = r.passed ? Json(nullptr) : to_json(r.witness);
    out.push_back(std::move(item));
  }
  return out;
}

bool merged_passed(const Json& merged) {
  for (const auto& item : merged)
    if (!item["passed"].get<bool>()) return false;
  return true;
}

Json system_header(const std::string& command, const RunOptions& options, const SystemConfig& sc,
                   const FlowSystem& sys) {
  Json out;
  out["command"] = command;
  out["seed"] = options.seed;
  out["n"] = sc.n;
  out["h"] = sys.grid.h;
  out["path"] = sc.path_name();
  out["potential"] = sys.weights.potential.name();
  out["phi"] = sys.phi.name;
  if (sc.path == FlowSystem::Path::Heat) out["f"] = sys.f.name;
  return out;
}

void check_positive(const ConfigNode& node, const std::string& key, double value) {
  if (!(value > 0.0)) throw ConfigError(node.path_of(key), "must be positive");
}

CommandResult finish(CommandResult result, const RunOptions& options, const std::string& stem) {
  const auto file = options.out_dir / (stem + ".json");
  write_json(file, result.report);
  result.files.push_back(file);
  return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// simulate

CommandResult cmd_simulate(const Json& config, const RunOptions& options) {
  const ConfigNode root(config, "config");
  root.allow_only({"n", "path", "potential", "phi", "f", "rho0", "t_end", "tol", "samples"});
  const SystemConfig sc = parse_system(root);
  const StateSpec state = root.has("rho0") ? parse_state(root.child("rho0")) : StateSpec{};
  const double t_end = root.number("t_end", 1.0);
  check_positive(root, "t_end", t_end);
  const double tol = root.number("tol", 1e-9);
  check_positive(root, "tol", tol);
  const long long samples = root.integer("samples", 101);
  if (samples < 2 || samples > 10000000) throw ConfigError(root.path_of("samples"), "must be at least 2");

  const FlowSystem sys = sc.build();
  Rng rng(options.seed);
  const Eigen::VectorXd rho0 = state.make(sys.grid, rng);
  require_state(sys, rho0);

  FlowOptions flow_options;
  flow_options.tol = tol;
  flow_options.samples = static_cast<std::size_t>(samples);
  const Trajectory traj = integrate(sys, rho0, t_end, flow_options);

  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 0; i < sys.nodes(); ++i) header.push_back("rho_" + std::to_string(i));
  for (const char* c : {"entropy", "min_rho", "max_rho", "grad_norm"}) header.emplace_back(c);
  CsvWriter csv(header);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row{traj.times[k]};
    for (Eigen::Index i = 0; i < sys.nodes(); ++i) row.push_back(traj.states[k][i]);
    row.insert(row.end(), {traj.entropy[k], traj.min_rho[k], traj.max_rho[k], traj.grad_norm[k]});
    csv.add_row(row);
  }
  CommandResult result;
  const auto csv_file = options.out_dir / "simulate.csv";
  csv.write(csv_file);
  result.files.push_back(csv_file);

  Json report = system_header("simulate", options, sc, sys);
  report["t_end"] = t_end;
  report["tol"] = tol;
  report["samples"] = traj.times.size();
  report["accepted_steps"] = traj.accepted_steps;
  report["rejected_steps"] = traj.rejected_steps;
  report["initial_mass"] = traj.states.front().sum();
  report["final_mass"] = traj.states.back().sum();
  report["initial_entropy"] = traj.entropy.front();
  report["final_entropy"] = traj.entropy.back();
  bool entropy_monotone = true;
  for (std::size_t k = 1; k < traj.entropy.size(); ++k)
    entropy_monotone = entropy_monotone &&
                       traj.entropy[k] <= traj.entropy[k - 1] + 1e-10 * std::max(1.0, std::abs(traj.entropy[k - 1]));
  report["entropy_nonincreasing"] = entropy_monotone;

  Json apriori;
  if (sys.weights.potential.is_zero()) {
    const PropertyReport checks = apriori_monitor(sys, traj);
    apriori["applicable"] = true;
    apriori["passed"] = checks.all_passed();
    apriori["results"] = property_results(checks);
    result.exit_code = checks.all_passed() ? kExitOk : kExitViolation;
  } else {
    apriori["applicable"] = false;
    apriori["passed"] = nullptr;
    apriori["results"] = Json::array();
  }
  report["apriori"] = std::move(apriori);
  report["exit_code"] = result.exit_code;
  result.report = std::move(report);
  return finish(std::move(result), options, "simulate");
}

// ---------------------------------------------------------------------------
// convexity

CommandResult cmd_convexity(const Json& config, const RunOptions& options) {
  const ConfigNode root(config, "config");
  root.allow_only({"n", "path", "potential", "phi", "f", "state", "simulation", "lambda"});
  const SystemConfig sc = parse_system(root);
  if (root.has("state") && root.has("simulation"))
    throw ConfigError(root.path_of("simulation"), "give either state or simulation, not both");

  bool use_lambda_h = true;
  double fixed_lambda = 0.0;
  if (root.has("lambda")) {
    const Json& l = root.value()["lambda"];
    if (l.is_string()) {
      if (l.get<std::string>() != "lambda_h") throw ConfigError(root.path_of("lambda"), "expected \"lambda_h\" or a number");
    } else {
      fixed_lambda = root.number("lambda");
      use_lambda_h = false;
    }
  }

  const FlowSystem sys = sc.build();
  Rng rng(options.seed);
  std::vector<Eigen::VectorXd> states;
  std::vector<double> times;
  if (root.has("simulation")) {
    const ConfigNode sim = root.child("simulation");
    sim.allow_only({"rho0", "t_end", "tol", "samples"});
    const StateSpec s0 = sim.has("rho0") ? parse_state(sim.child("rho0")) : StateSpec{};
    FlowOptions flow_options;
    flow_options.tol = sim.number("tol", 1e-9);
    check_positive(sim, "tol", flow_options.tol);
    const long long samples = sim.integer("samples", 11);
    if (samples < 2 || samples > 1000000) throw ConfigError(sim.path_of("samples"), "must be at least 2");
    flow_options.samples = static_cast<std::size_t>(samples);
    const double t_end = sim.number("t_end", 1.0);
    check_positive(sim, "t_end", t_end);
    const Eigen::VectorXd rho0 = s0.make(sys.grid, rng);
    require_state(sys, rho0);
    const Trajectory traj = integrate(sys, rho0, t_end, flow_options);
    states = traj.states;
    times = traj.times;
  } else {
    const StateSpec s = root.has("state") ? parse_state(root.child("state")) : StateSpec{};
    states.push_back(s.make(sys.grid, rng));
    require_state(sys, states.back());
  }

  std::vector<ConvexityReport> reports(states.size());
  std::vector<double> lambda_values(states.size());
  parallel_for(states.size(), options.jobs, [&](std::size_t i) {
    lambda_values[i] = lambda_h(sys, states[i]);
    const double lambda = use_lambda_h ? lambda_values[i] : fixed_lambda;
    reports[i] = certify(assemble_tilde_m(sys, states[i]), edge_weights(sys, states[i]), lambda);
  });

  Json report = system_header("convexity", options, sc, sys);
  report["lambda_mode"] = use_lambda_h ? Json("lambda_h") : Json("fixed");
  Json entries = Json::array();
  std::size_t dominance = 0, eigenvalue = 0, not_psd = 0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const ConvexityReport& r = reports[i];
    Json e;
    e["index"] = i;
    if (!times.empty()) e["t"] = times[i];
    e["rho"] = to_json(states[i]);
    e["lambda_h"] = lambda_values[i];
    e["lambda"] = r.lambda;
    e["certificate"] = to_string(r.certificate);
    e["dominance_margin"] = r.dominance_margin;
    e["smallest_eigenvalue"] = r.smallest_eigenvalue;
    e["witness"] = r.certified() ? Json(nullptr) : to_json(r.witness);
    e["witness_value"] = r.certified() ? Json(nullptr) : Json(r.witness_value);
    entries.push_back(std::move(e));
    switch (r.certificate) {
      case Certificate::DominanceCertified:
        ++dominance;
        break;
      case Certificate::EigenvalueCertified:
        ++eigenvalue;
        break;
      case Certificate::NotPSD:
        ++not_psd;
        break;
    }
    min_eigenvalue = std::min(min_eigenvalue, r.smallest_eigenvalue);
  }
  report["states"] = std::move(entries);
  Json summary;
  summary["count"] = states.size();
  summary["dominance_certified"] = dominance;
  summary["eigenvalue_certified"] = eigenvalue;
  summary["not_psd"] = not_psd;
  summary["min_smallest_eigenvalue"] = min_eigenvalue;
  report["summary"] = std::move(summary);

  CommandResult result;
  result.exit_code = not_psd == 0 ? kExitOk : kExitViolation;
  report["exit_code"] = result.exit_code;
  result.report = std::move(report);
  return finish(std::move(result), options, "convexity");
}

// ---------------------------------------------------------------------------
// geodesic

CommandResult cmd_geodesic(const Json& config, const RunOptions& options) {
  const ConfigNode root(config, "config");
  root.allow_only({"n", "path", "potential", "phi", "f", "rho0", "rho1", "lambda", "samples", "tol", "steps",
                   "max_newton", "allow_fallback", "minimization_tol", "max_minimization_iterations"});
  const SystemConfig sc = parse_system(root, 1);
  const StateSpec s0 = parse_state(root.child("rho0"));
  const StateSpec s1 = parse_state(root.child("rho1"));
  const double lambda = root.number("lambda", 0.0);
  const long long samples = root.integer("samples", 11);
  if (samples < 2 || samples > 100000) throw ConfigError(root.path_of("samples"), "must be at least 2");

  GeodesicOptions geo;
  geo.tol = root.number("tol", geo.tol);
  if (!(geo.tol >= 0.0)) throw ConfigError(root.path_of("tol"), "must be nonnegative");
  const long long steps = root.integer("steps", geo.steps);
  if (steps < 2 || steps > 1000000) throw ConfigError(root.path_of("steps"), "must be at least 2");
  geo.steps = static_cast<int>(steps);
  const long long newton = root.integer("max_newton", geo.max_newton);
  if (newton < 0 || newton > 100000) throw ConfigError(root.path_of("max_newton"), "must be nonnegative");
  geo.max_newton = static_cast<int>(newton);
  geo.allow_fallback = root.boolean("allow_fallback", geo.allow_fallback);
  if (root.has("minimization_tol")) {
    geo.minimization_tol = root.number("minimization_tol");
    if (!(geo.minimization_tol >= 0.0)) throw ConfigError(root.path_of("minimization_tol"), "must be nonnegative");
  }
  const long long iters = root.integer("max_minimization_iterations", geo.max_minimization_iterations);
  if (iters < 0 || iters > 100000000)
    throw ConfigError(root.path_of("max_minimization_iterations"), "must be nonnegative");
  geo.max_minimization_iterations = static_cast<int>(iters);

  const FlowSystem sys = sc.build();
  Rng rng(options.seed);
  const Eigen::VectorXd rho0 = s0.make(sys.grid, rng);
  const Eigen::VectorXd rho1 = s1.make(sys.grid, rng);

  Json report = system_header("geodesic", options, sc, sys);
  report["rho0"] = to_json(rho0);
  report["rho1"] = to_json(rho1);
  CommandResult result;

  GeodesicPath path;
  try {
    path = shoot(sys, rho0, rho1, geo);
  } catch (const GeodesicError& e) {
    report["status"] = "geodesic-failure";
    report["message"] = e.what();
    report["shooting_residual"] = number_or_null(e.shooting_residual());
    report["minimization_residual"] = number_or_null(e.minimization_residual());
    result.exit_code = kExitGeodesicFailure;
    report["exit_code"] = result.exit_code;
    result.report = std::move(report);
    return finish(std::move(result), options, "geodesic");
  }
  const VerificationReport check = verify_path(sys, path, lambda, static_cast<int>(samples));

  std::vector<std::string> header{"t"};
  for (Eigen::Index i = 0; i < sys.nodes(); ++i) header.push_back("rho_" + std::to_string(i));
  for (Eigen::Index i = 0; i < sys.nodes(); ++i) header.push_back("psi_" + std::to_string(i));
  header.emplace_back("speed");
  header.emplace_back("entropy");
  CsvWriter csv(header);
  for (std::size_t k = 0; k < path.times.size(); ++k) {
    std::vector<double> row{path.times[k]};
    for (Eigen::Index i = 0; i < sys.nodes(); ++i) row.push_back(path.rho[k][i]);
    for (Eigen::Index i = 0; i < sys.nodes(); ++i) row.push_back(path.psi[k][i]);
    row.push_back(path.speed[k]);
    row.push_back(entropy(sys, path.rho[k]));
    csv.add_row(row);
  }
  const auto csv_file = options.out_dir / "geodesic.csv";
  csv.write(csv_file);
  result.files.push_back(csv_file);

  report["status"] = "ok";
  report["method"] = path.method;
  report["W"] = path.distance();
  report["action"] = path.action;
  report["residual"] = path.residual;
  report["shooting_residual"] = number_or_null(path.shooting_residual);
  report["iterations"] = path.iterations;
  Json cc;
  cc["lambda"] = check.lambda;
  cc["passed"] = check.passed();
  cc["chord_holds"] = check.chord_holds;
  cc["differential_holds"] = check.differential_holds;
  cc["formula_matches"] = check.formula_matches;
  cc["constant_speed"] = check.constant_speed;
  cc["boundary_residual"] = check.boundary_residual;
  cc["worst_chord_violation"] = number_or_null(check.worst_chord_violation);
  cc["worst_d2_violation"] = number_or_null(check.worst_d2_violation);
  cc["worst_d2_mismatch"] = number_or_null(check.worst_d2_mismatch);
  cc["speed_deviation"] = check.speed_deviation;
  Json sample_rows = Json::array();
  for (const auto& s : check.samples) {
    Json row;
    row["t"] = s.t;
    row["entropy"] = s.entropy;
    row["chord_bound"] = s.chord_bound;
    row["d2_finite_difference"] = number_or_null(s.d2_finite_difference);
    row["d2_formula"] = number_or_null(s.d2_formula);
    row["speed"] = s.speed;
    sample_rows.push_back(std::move(row));
  }
  cc["samples"] = std::move(sample_rows);
  report["convexity_check"] = std::move(cc);
  result.exit_code = check.passed() ? kExitOk : kExitViolation;
  report["exit_code"] = result.exit_code;
  result.report = std::move(report);
  return finish(std::move(result), options, "geodesic");
}

// ---------------------------------------------------------------------------
// lambda

CommandResult cmd_lambda(const Json& config, const RunOptions& options) {
  const ConfigNode root(config, "config");
  root.allow_only({"potential", "phi", "n", "n_values", "state"});
  const Potential potential =
      root.has("potential") ? parse_potential(root.child("potential")) : Potential::quadratic(1.0);
  const SmoothFunction phi = root.has("phi") ? parse_phi(root.child("phi")) : identity_function();
  std::vector<long long> ns;
  if (root.has("n") && root.has("n_values")) throw ConfigError(root.path_of("n"), "give either n or n_values");
  if (root.has("n_values")) {
    ns = root.integers("n_values");
  } else if (root.has("n")) {
    ns = {root.integer("n")};
  } else {
    ns = {8, 16, 32, 64};
  }
  if (ns.empty()) throw ConfigError(root.path_of("n_values"), "must not be empty");
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] < 2 || ns[i] > 1000000) throw ConfigError(root.path_of("n_values") + "[" + std::to_string(i) + "]", "must be at least 2");
  const StateSpec state = root.has("state") ? parse_state(root.child("state")) : StateSpec{};

  // States are drawn sequentially so that the result does not depend on --jobs.
  Rng rng(options.seed);
  std::vector<FlowSystem> systems;
  std::vector<Eigen::VectorXd> states;
  for (long long n : ns) {
    systems.push_back(FlowSystem::fokker_planck(build_grid(static_cast<int>(n)), potential, phi));
    states.push_back(state.make(systems.back().grid, rng));
    require_state(systems.back(), states.back());
  }
  std::vector<double> values(ns.size());
  parallel_for(ns.size(), options.jobs, [&](std::size_t i) { values[i] = lambda_h(systems[i], states[i]); });

  const double gamma = potential.kind == Potential::Kind::Quadratic ? potential.gamma : 0.0;
  Json report;
  report["command"] = "lambda";
  report["seed"] = options.seed;
  report["potential"] = potential.name();
  report["phi"] = phi.name;
  report["gamma"] = gamma;
  Json rows = Json::array();
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double h = systems[i].grid.h;
    Json row;
    row["n"] = ns[i];
    row["h"] = h;
    row["lambda_h"] = values[i];
    row["gap"] = gamma - values[i];
    row["half_h_squared"] = 0.5 * h * h;
    if (phi.family == SmoothFunction::Family::Identity && gamma > 0.0)
      row["closed_form"] = -2.0 / (h * h) * std::expm1(-0.5 * gamma * h * h);
    rows.push_back(std::move(row));
  }
  report["values"] = std::move(rows);
  CommandResult result;
  report["exit_code"] = result.exit_code;
  result.report = std::move(report);
  return finish(std::move(result), options, "lambda");
}

// ---------------------------------------------------------------------------
// counterexample

CommandResult cmd_counterexample(const Json& config, const RunOptions& options) {
  const ConfigNode root(config, "config");
  root.allow_only({"max_draws"});
  const long long max_draws = root.integer("max_draws", 100000);
  if (max_draws < 1) throw ConfigError(root.path_of("max_draws"), "must be positive");

  const PolynomialComparison cmp = compare_with_printed(reconstruct_minor_polynomial(), printed_minor_expansion());
  const CounterexampleWitness w = search_counterexample(options.seed, static_cast<std::size_t>(max_draws));

  Json report;
  report["command"] = "counterexample";
  report["seed"] = options.seed;
  Json rows = Json::array();
  for (const auto& row : cmp.rows) {
    Json r;
    r["monomial"] = monomial_to_string(row.monomial);
    r["printed"] = rational_to_string(row.printed);
    r["reconstructed"] = rational_to_string(row.reconstructed);
    r["match"] = row.matches();
    rows.push_back(std::move(r));
  }
  Json poly;
  poly["terms"] = std::move(rows);
  poly["mismatches"] = cmp.mismatches;
  poly["all_match"] = cmp.all_match();
  report["polynomial"] = std::move(poly);

  Json witness;
  witness["found"] = w.found;
  witness["draws"] = w.draws;
  CommandResult result;
  if (w.found) {
    witness["state"] = to_json(w.state);
    witness["minor"] = w.minor;
    witness["certificate"] = to_string(w.report.certificate);
    witness["smallest_eigenvalue"] = w.report.smallest_eigenvalue;
    witness["dominance_margin"] = w.report.dominance_margin;
    witness["vector"] = w.report.certified() ? Json(nullptr) : to_json(w.report.witness);
    witness["witness_value"] = w.report.certified() ? Json(nullptr) : Json(w.report.witness_value);
    if (!w.report.certified()) result.exit_code = kExitViolation;
  }
  report["witness"] = std::move(witness);
  report["exit_code"] = result.exit_code;
  result.report = std::move(report);
  return finish(std::move(result), options, "counterexample");
}

// ---------------------------------------------------------------------------
// verify-means

CommandResult cmd_verify_means(const Json& config, const RunOptions& options) {
  const ConfigNode root(config, "config");
  root.allow_only({"identity_points", "identity_tolerance", "concavity_samples", "means"});
  const long long points = root.integer("identity_points", 10000);
  if (points < 0 || points > 100000000) throw ConfigError(root.path_of("identity_points"), "must be nonnegative");
  const double tolerance = root.number("identity_tolerance", 1e-6);
  check_positive(root, "identity_tolerance", tolerance);
  const long long samples = root.integer("concavity_samples", 10000);
  if (samples < 0 || samples > 100000000) throw ConfigError(root.path_of("concavity_samples"), "must be nonnegative");

  std::vector<MeanFunction> means;
  if (root.has("means")) {
    const Json& list = root.value()["means"];
    if (!list.is_array()) throw ConfigError(root.path_of("means"), "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i)
      means.push_back(parse_mean(ConfigNode(list[i], root.path_of("means") + "[" + std::to_string(i) + "]")));
  } else {
    means = {MeanFunction::logarithmic(), MeanFunction::power(1.5), MeanFunction::power(2.0),
             MeanFunction::f_mean(power_function(1.5)), MeanFunction::f_mean(power_function(2.0))};
  }

  // Points are drawn sequentially; only the evaluation is parallel.
  struct Point {
    double s, t, a, b;
  };
  Rng rng(options.seed);
  std::vector<Point> pts(static_cast<std::size_t>(points));
  for (auto& p : pts) p = {rng.log_uniform(0.05, 20.0), rng.log_uniform(0.05, 20.0), rng.log_uniform(0.05, 20.0),
                           rng.log_uniform(0.05, 20.0)};
  std::vector<PropertyReport> identities(pts.size());
  parallel_for(pts.size(), options.jobs, [&](std::size_t i) {
    const auto grid = default_r_grid(pts[i].t);
    identities[i] = check_log_mean_identities(pts[i].s, pts[i].t, pts[i].a, pts[i].b, grid, tolerance);
  });
  std::vector<PropertyReport> concavity(means.size());
  parallel_for(means.size(), options.jobs, [&](std::size_t i) {
    concavity[i] = check_concavity(means[i], static_cast<std::size_t>(samples), options.seed);
  });

  Json report;
  report["command"] = "verify-means";
  report["seed"] = options.seed;
  Json identity_json;
  identity_json["points"] = pts.size();
  identity_json["results"] = merge_property_reports(identities);
  const bool identity_ok = merged_passed(identity_json["results"]);
  identity_json["passed"] = identity_ok;
  report["log_mean_identities"] = std::move(identity_json);
  Json conc = Json::array();
  bool conc_ok = true;
  for (std::size_t i = 0; i < means.size(); ++i) {
    Json item;
    item["mean"] = means[i].name();
    item["samples"] = samples;
    item["results"] = merge_property_reports({concavity[i]});
    const bool ok = merged_passed(item["results"]);
    item["passed"] = ok;
    conc_ok = conc_ok && ok;
    conc.push_back(std::move(item));
  }
  report["concavity"] = std::move(conc);
  CommandResult result;
  result.exit_code = identity_ok && conc_ok ? kExitOk : kExitViolation;
  report["passed"] = identity_ok && conc_ok;
  report["exit_code"] = result.exit_code;
  result.report = std::move(report);
  return finish(std::move(result), options, "verify-means");
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "convexity", "geodesic",
                                              "lambda",   "counterexample", "verify-means"};
  return names;
}

int run_command(const std::string& name, const Json& config, const RunOptions& options, std::ostream& log,
                std::ostream& err) {
  try {
    CommandResult result;
    if (name == "simulate") {
      result = cmd_simulate(config, options);
    } else if (name == "convexity") {
      result = cmd_convexity(config, options);
    } else if (name == "geodesic") {
      result = cmd_geodesic(config, options);
    } else if (name == "lambda") {
      result = cmd_lambda(config, options);
    } else if (name == "counterexample") {
      result = cmd_counterexample(config, options);
    } else if (name == "verify-means") {
      result = cmd_verify_means(config, options);
    } else {
      err << "error: unknown command " << name << "\n";
      return kExitError;
    }
    for (const auto& f : result.files) log << "wrote " << f.string() << "\n";
    return result.exit_code;
  } catch (const GeodesicError& e) {
    err << "error: " << e.what() << " (shooting residual " << format_double(e.shooting_residual())
        << ", minimization residual " << format_double(e.minimization_residual()) << ")\n";
    return kExitGeodesicFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace fpconvex::cli
