// tofkit command-line front end: construction verification, fault
// enumeration, and distillation resource estimates as reproducible JSON
// reports.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tofkit/constructions.hpp"
#include "tofkit/error_analysis.hpp"
#include "tofkit/resources.hpp"

using json = nlohmann::ordered_json;
using namespace tofkit;

namespace {

constexpr const char* kToolVersion = "1.0.0";
constexpr int kExitPass = 0;
constexpr int kExitContractFailure = 1;
constexpr int kExitUsage = 2;

uint64_t default_seed() {
  if (const char* env = std::getenv("TOFKIT_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return kDefaultSeed;
}

json make_envelope(const std::string& command, uint64_t seed,
                   json parameters) {
  json report;
  report["tool_version"] = kToolVersion;
  report["command"] = command;
  report["seed"] = seed;
  report["parameters"] = std::move(parameters);
  report["results"] = json::object();
  report["summary"] = {{"pass", true}, {"failures", json::array()}};
  return report;
}

void record_failure(json& report, const std::string& what) {
  report["summary"]["pass"] = false;
  report["summary"]["failures"].push_back(what);
}

void emit(const json& report, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::ofstream out(output_path);
    out << report.dump(2) << "\n";
  }
}

std::optional<Circuit> circuit_by_name(const std::string& name) {
  if (name == "toffoli_star") return build_toffoli_star();
  if (name == "toffoli_star_dagger") return build_toffoli_star_dagger();
  if (name == "four_t") return build_four_t_toffoli();
  if (name == "seven_t") return build_standard_seven_t_toffoli();
  if (name == "error_detecting") return build_error_detecting_toffoli();
  if (name == "ancilla_prep") return build_ancilla_prep();
  if (name == "ancilla_consume") return build_ancilla_consumption();
  if (name == "teleported") return build_teleported_toffoli();
  return std::nullopt;
}

// ---------------------------------------------------------------- verify --

json check(bool ok, const std::string& label, json& section, json& report) {
  section["checks"][label] = ok;
  if (!ok) {
    section["pass"] = false;
    record_failure(report, section["name"].get<std::string>() + ": " + label);
  }
  return section;
}

json verify_toffoli_star(json& report) {
  json s = {{"name", "toffoli_star"}, {"pass", true}, {"checks", json::object()}};
  Circuit c = build_toffoli_star();
  s["t_count"] = c.t_count();
  check(c.t_count() == 4, "t_count == 4", s, report);
  DenseUnitary u = extract_unitary(c);
  DenseUnitary expected = multiply(
      reference_toffoli(), kron(controlled_s_dagger(), DenseUnitary::identity(2)));
  double dist = phase_insensitive_distance(u, expected);
  s["distance_to_tof_csdg"] = dist;
  check(dist < kOperatorTol, "unitary == Tof * CSdg", s, report);
  check(u.is_unitary(), "unitarity", s, report);
  return s;
}

json verify_four_t(json& report) {
  json s = {{"name", "four_t"}, {"pass", true}, {"checks", json::object()}};
  Circuit c = build_four_t_toffoli();
  s["t_count"] = c.t_count();
  check(c.t_count() == 4, "t_count == 4", s, report);
  auto result = gadget_implements(c, reference_toffoli(), {0, 1, 2});
  if (!result.pass) s["diagnostics"] = result.diagnostics;
  check(result.pass, "gadget_implements(Tof)", s, report);
  return s;
}

json verify_seven_t(json& report) {
  json s = {{"name", "seven_t"}, {"pass", true}, {"checks", json::object()}};
  Circuit c = build_standard_seven_t_toffoli();
  s["t_count"] = c.t_count();
  check(c.t_count() == 7, "t_count == 7", s, report);
  double dist = phase_insensitive_distance(extract_unitary(c), reference_toffoli());
  s["distance_to_tof"] = dist;
  check(dist < kOperatorTol, "unitary == Tof", s, report);
  return s;
}

json verify_error_detecting(json& report) {
  json s = {{"name", "error_detecting"}, {"pass", true}, {"checks", json::object()}};
  Circuit c = build_error_detecting_toffoli();
  s["t_count"] = c.t_count();
  check(c.t_count() == 8, "t_count == 8", s, report);
  auto result = gadget_implements(c, reference_toffoli(), {0, 1, 2});
  if (!result.pass) s["diagnostics"] = result.diagnostics;
  check(result.pass, "noiseless action == Tof, syndrome 0", s, report);
  bool all_detected = true;
  for (int site = 0; site < kTSiteCount; ++site) {
    ErrorPattern p;
    p.faults[site] = Pauli::Z;
    all_detected = all_detected && classify(p) == PatternClass::detected;
  }
  check(all_detected, "all 8 single-Z faults detected", s, report);
  return s;
}

json verify_ancilla_prep(json& report) {
  json s = {{"name", "ancilla_prep"}, {"pass", true}, {"checks", json::object()}};
  Circuit c = build_ancilla_prep();
  auto branches = run(c, initial_state(c, StateVector{0, {1.0}}, {}));
  bool deterministic = branches.size() == 1 && branches[0].outcomes.at(0) == 0;
  check(deterministic, "noiseless acceptance probability 1", s, report);
  bool state_ok =
      deterministic &&
      data_residual(branches[0].state, {0, 1, 2}, toffoli_ancilla_state()) <
          kOperatorTol;
  check(state_ok, "accept state == sum |x,y,xy>/2", s, report);
  return s;
}

json verify_ancilla_consume(json& report) {
  json s = {{"name", "ancilla_consume"}, {"pass", true}, {"checks", json::object()}};
  Circuit c = build_ancilla_consumption();
  GadgetOptions opts;
  opts.ancilla_state = toffoli_ancilla_state();
  opts.ancilla_qubits = {3, 4, 5};
  auto result = gadget_implements(c, reference_toffoli(), {0, 1, 2},
                                  kOperatorTol, opts);
  if (!result.pass) s["diagnostics"] = result.diagnostics;
  check(result.pass, "all outcome branches teleport Tof", s, report);

  auto end_to_end = gadget_implements(build_teleported_toffoli(),
                                      reference_toffoli(), {0, 1, 2});
  check(end_to_end.pass, "prep + consume end to end", s, report);
  return s;
}

json verify_multi_control(json& report, int n) {
  json s = {{"name", "multi_control:" + std::to_string(n)},
            {"pass", true},
            {"checks", json::object()}};
  ControlledGate g = build_multi_controlled(controlled_not_gate(), n);
  s["t_cost"] = g.t_cost;
  check(g.t_cost == 4 * n, "t_cost == 4n", s, report);
  check(g.verified, "realization verified against controlled target", s, report);
  return s;
}

int cmd_verify(const std::string& name, uint64_t seed,
               const std::string& output) {
  json report = make_envelope("verify", seed, {{"name", name}});
  json sections = json::array();

  auto add = [&](const std::string& key) {
    if (key == "toffoli_star") sections.push_back(verify_toffoli_star(report));
    else if (key == "four_t") sections.push_back(verify_four_t(report));
    else if (key == "seven_t") sections.push_back(verify_seven_t(report));
    else if (key == "error_detecting")
      sections.push_back(verify_error_detecting(report));
    else if (key == "ancilla_prep") sections.push_back(verify_ancilla_prep(report));
    else if (key == "ancilla_consume")
      sections.push_back(verify_ancilla_consume(report));
    else if (key.rfind("multi_control:", 0) == 0) {
      std::string count = key.substr(14);
      if (count.empty() ||
          count.find_first_not_of("0123456789") != std::string::npos) {
        throw CLI::ValidationError("bad control count in '" + key + "'");
      }
      sections.push_back(verify_multi_control(report, std::stoi(count)));
    }
    else
      throw CLI::ValidationError("unknown construction '" + key + "'");
  };

  if (name == "all") {
    for (const char* key :
         {"toffoli_star", "four_t", "seven_t", "error_detecting",
          "ancilla_prep", "ancilla_consume", "multi_control:2"}) {
      add(key);
    }
  } else {
    add(name);
  }

  report["results"]["sections"] = std::move(sections);
  emit(report, output);
  return report["summary"]["pass"].get<bool>() ? kExitPass
                                               : kExitContractFailure;
}

// ---------------------------------------------------------------- errors --

json weight_counts(const std::array<int64_t, kTSiteCount + 1>& counts) {
  json arr = json::array();
  for (int64_t c : counts) arr.push_back(c);
  return arr;
}

int cmd_errors(const std::vector<double>& p_values, int64_t trials,
               uint64_t seed, const std::string& output,
               const std::string& csv_path) {
  json report = make_envelope(
      "errors", seed,
      {{"p", p_values}, {"trials", trials}});

  PosteriorReport posterior = enumerate_all();

  json& res = report["results"];
  res["site_count"] = kTSiteCount;
  res["counts_by_weight"] = {
      {"detected", weight_counts(posterior.detected_by_weight)},
      {"accepted_correct", weight_counts(posterior.correct_by_weight)},
      {"accepted_faulty", weight_counts(posterior.faulty_by_weight)},
      {"accepted", weight_counts(posterior.accept_by_weight())},
  };

  json classes = json::array();
  for (PatternClass c : posterior.classes) classes.push_back(to_string(c));
  res["pattern_classes"] = std::move(classes);

  json evals = json::array();
  for (double p : p_values) {
    evals.push_back({{"p", p},
                     {"accept", posterior.p_accept(p)},
                     {"reject", posterior.p_reject(p)},
                     {"accepted_faulty", posterior.p_accepted_faulty(p)},
                     {"posterior", posterior.posterior(p)}});
  }
  res["evaluations"] = std::move(evals);

  json survey = json::array();
  for (const XSurveyRow& row : x_error_survey()) {
    survey.push_back({{"site", row.site},
                      {"class", to_string(row.cls)},
                      {"detection_probability", row.detection_probability}});
  }
  res["x_error_survey"] = std::move(survey);

  if (trials > 0) {
    json mc = json::array();
    for (double p : p_values) {
      MonteCarloResult r = monte_carlo(posterior, p, trials, seed);
      mc.push_back({{"p", p},
                    {"trials", r.trials},
                    {"accepted", r.accepted},
                    {"accepted_faulty", r.accepted_faulty},
                    {"acceptance_rate", r.acceptance_rate},
                    {"posterior_rate", r.posterior_rate},
                    {"acceptance_ci", {r.acceptance_ci.low, r.acceptance_ci.high}},
                    {"posterior_ci", {r.posterior_ci.low, r.posterior_ci.high}}});
    }
    res["monte_carlo"] = std::move(mc);
  }

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << "weight,detected,accepted_correct,accepted_faulty\n";
    for (int w = 0; w <= kTSiteCount; ++w) {
      csv << w << "," << posterior.detected_by_weight[w] << ","
          << posterior.correct_by_weight[w] << ","
          << posterior.faulty_by_weight[w] << "\n";
    }
  }

  // headline contract: detection of all single faults, exact 28 at weight 2
  if (posterior.accept_by_weight()[1] != 0 ||
      posterior.faulty_by_weight[2] != 28) {
    record_failure(report, "exact coefficient contract violated");
  }

  emit(report, output);
  return report["summary"]["pass"].get<bool>() ? kExitPass
                                               : kExitContractFailure;
}

// -------------------------------------------------------------- resources --

std::vector<DistillationProtocol> load_menu(const std::string& config_path,
                                            json& report) {
  if (config_path.empty()) {
    report["results"]["config"] = "builtin-defaults";
    return default_protocol_menu();
  }
  std::ifstream in(config_path);
  if (!in) {
    throw CLI::ValidationError("cannot open config file '" + config_path + "'");
  }
  json cfg = json::parse(in);
  std::vector<DistillationProtocol> menu;
  for (const json& p : cfg.at("protocols")) {
    DistillationProtocol proto;
    proto.name = p.at("name").get<std::string>();
    proto.n_in = p.at("n_in").get<int>();
    proto.n_out = p.at("n_out").get<int>();
    proto.error_coeff = p.at("error_coeff").get<double>();
    proto.error_power = p.at("error_power").get<int>();
    proto.validate();
    menu.push_back(std::move(proto));
  }
  report["results"]["config"] = config_path;
  return menu;
}

json trace_json(const PipelineResult& pipeline) {
  json rounds = json::array();
  for (const RoundTrace& t : pipeline.trace) {
    rounds.push_back({{"protocol", t.protocol},
                      {"p_in", t.p_in},
                      {"p_out", t.p_out},
                      {"success_prob", t.success_prob},
                      {"cost_after", t.cost_after}});
  }
  return rounds;
}

int cmd_resources(const std::string& config_path, double p_raw, double target,
                  bool no_distillation, double volume_factor, uint64_t seed,
                  const std::string& output, const std::string& csv_path) {
  json report = make_envelope("resources", seed,
                              {{"p_raw", p_raw},
                               {"target", target},
                               {"no_distillation", no_distillation},
                               {"volume_factor", volume_factor}});

  std::vector<DistillationProtocol> menu = load_menu(config_path, report);
  if (no_distillation) menu.clear();

  PosteriorReport posterior = enumerate_all();
  std::vector<ToffoliScheme> schemes = {
      seven_t_scheme(), four_t_scheme(),
      error_detecting_scheme(
          [posterior](double p) { return posterior.posterior(p); },
          [posterior](double p) { return posterior.p_reject(p); })};

  SchemeReport result;
  try {
    result = compare(schemes, p_raw, target, menu);
  } catch (const ResourceError& e) {
    record_failure(report, e.what());
    emit(report, output);
    return kExitContractFailure;
  }

  json table = json::array();
  for (const SchemeResult& s : result.schemes) {
    json entry = {{"scheme", to_string(s.kind)},
                  {"p_t_final", s.p_t_final},
                  {"toffoli_error", s.toffoli_error},
                  {"raw_states_total", s.raw_states_total},
                  {"pipeline", trace_json(s.pipeline)}};
    if (volume_factor != 1.0) {
      entry["volume_weighted_cost"] = s.raw_states_total * volume_factor;
    }
    table.push_back(std::move(entry));
  }
  report["results"]["schemes"] = std::move(table);
  report["results"]["savings_factor"] = result.savings_factor;
  report["results"]["seven_over_four"] = result.seven_over_four;

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << "scheme,p_t_final,toffoli_error,raw_states_total\n";
    for (const SchemeResult& s : result.schemes) {
      csv << to_string(s.kind) << "," << s.p_t_final << "," << s.toffoli_error
          << "," << s.raw_states_total << "\n";
    }
  }

  emit(report, output);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toffoli construction verification and resource estimation"};
  app.require_subcommand(0, 1);

  uint64_t seed = default_seed();
  std::string output;
  std::string dump_name;
  app.add_option("--seed", seed, "Seed for randomized checks and sampling");
  app.add_option("--output", output, "Write the JSON report here (default stdout)");
  app.add_option("--dump-circuit", dump_name,
                 "Print the named circuit in the text dump format and exit");

  auto* verify = app.add_subcommand("verify", "Verify circuit constructions");
  std::string verify_name = "all";
  verify->add_option("name", verify_name,
                     "Construction (toffoli_star, four_t, seven_t, "
                     "error_detecting, ancilla_prep, ancilla_consume, "
                     "multi_control:n) or 'all'");

  auto* errors = app.add_subcommand("errors", "Fault enumeration report");
  std::vector<double> p_values = {1e-4, 1e-3, 1e-2};
  int64_t trials = 0;
  std::string errors_csv;
  errors->add_option("--p", p_values, "Per-T Z-error probabilities to evaluate");
  errors->add_option("--trials", trials,
                     "Monte Carlo trials per p (0 disables the section)");
  errors->add_option("--csv", errors_csv, "Also write the per-weight table as CSV");

  auto* resources = app.add_subcommand("resources", "Distillation cost report");
  std::string config_path;
  double p_raw = 1e-2;
  double target = 1e-12;
  bool no_distillation = false;
  double volume_factor = 1.0;
  std::string resources_csv;
  resources->add_option("--config", config_path, "Protocol menu JSON file");
  resources->add_option("--p-raw", p_raw, "Raw T-state error probability");
  resources->add_option("--target", target, "Target Toffoli error probability");
  resources->add_flag("--no-distillation", no_distillation,
                      "Use raw states directly (empty pipeline)");
  resources->add_option("--volume-factor", volume_factor,
                        "Optional circuit-volume weighting multiplier");
  resources->add_option("--csv", resources_csv, "Also write the cost table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (!dump_name.empty()) {
      auto circuit = circuit_by_name(dump_name);
      if (!circuit) {
        std::cerr << "unknown circuit '" << dump_name << "'\n";
        return kExitUsage;
      }
      std::cout << serialize(*circuit);
      return kExitPass;
    }
    if (verify->parsed()) return cmd_verify(verify_name, seed, output);
    if (errors->parsed()) {
      return cmd_errors(p_values, trials, seed, output, errors_csv);
    }
    if (resources->parsed()) {
      return cmd_resources(config_path, p_raw, target, no_distillation,
                           volume_factor, seed, output, resources_csv);
    }
    std::cerr << app.help();
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitContractFailure;
  }
}
