// lietorus_cli: every subcommand turns its flags into a scenario object and hands it to
// run_scenario, so `lietorus_cli run scenario.json` behaves exactly like the flag form.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "scenario.hpp"

using namespace lietorus;

namespace {

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stol(item));
  return out;
}

// "1,0;0,2" -> [[1,0],[0,2]]; a flat list of k*k entries is also accepted.
IntMat parse_rows(const std::string& s) {
  IntMat m;
  if (s.find(';') != std::string::npos) {
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';')) m.push_back(parse_longs(row));
    return m;
  }
  auto flat = parse_longs(s);
  size_t k = 0;
  while (k * k < flat.size()) ++k;
  if (k * k != flat.size()) throw Error(ErrorCode::SchemaError, "cli", "matrix needs k*k entries or ';'-separated rows");
  for (size_t i = 0; i < k; ++i) m.emplace_back(flat.begin() + i * k, flat.begin() + (i + 1) * k);
  return m;
}

struct Common {
  std::string spec_file, algebra, gram, constants, tuple, generators, periods, cartan, output;
  unsigned conductor = 0;
  long window = 0;
};

void add_common(CLI::App* c, Common& o, bool tuple) {
  c->add_option("--spec", o.spec_file, "Scenario JSON; flags override its keys");
  c->add_option("--algebra", o.algebra, "Type name (A1, B3, F4, ...) or 'b3' for o(diag(J3, I4))");
  c->add_option("--gram", o.gram, "JSON file with a Gram matrix; the algebra is o(form)");
  c->add_option("--constants", o.constants, "JSON file with structure constants");
  c->add_option("--conductor", o.conductor, "Work over Q(zeta_N)");
  c->add_option("--output", o.output, "Write the JSON report here as well");
  if (!tuple) return;
  c->add_option("--tuple", o.tuple, "'identity', 'identity:n', 'b3' or a JSON file");
  c->add_option("--generators", o.generators, "JSON file with a list of automorphism sources");
  c->add_option("--periods", o.periods, "Comma-separated periods m_i");
  c->add_option("--cartan", o.cartan, "'auto', 'chevalley' or a JSON file of spanning vectors");
  c->add_option("--window", o.window, "Window radius for window checks");
}

Json scenario_from(const std::string& command, const Common& o) {
  Json s = o.spec_file.empty() ? Json::object() : read_json_file(o.spec_file);
  s["command"] = command;
  if (!o.algebra.empty()) s["algebra"] = o.algebra == "b3" ? Json{{"example", "b3"}} : Json(o.algebra);
  if (!o.gram.empty()) s["algebra"] = {{"gram", read_json_file(o.gram)}};
  if (!o.constants.empty()) s["algebra"] = {{"constants", {{"file", o.constants}}}};
  if (o.conductor) s["conductor"] = o.conductor;
  if (!o.tuple.empty()) {
    if (o.tuple == "identity") s["tuple"] = "identity";
    else if (o.tuple.rfind("identity:", 0) == 0) s["tuple"] = {{"identity", std::stoul(o.tuple.substr(9))}};
    else if (o.tuple == "b3") s["tuple"] = {{"example", "b3"}};
    else s["tuple"] = {{"file", o.tuple}};
  }
  if (!o.generators.empty()) s["tuple"] = read_json_file(o.generators);
  if (!o.periods.empty()) {
    Json p = Json::array();
    for (long x : parse_longs(o.periods)) p.push_back(x);
    s["periods"] = p;
  }
  if (!o.cartan.empty()) s["cartan"] = o.cartan == "auto" || o.cartan == "chevalley" ? Json(o.cartan) : read_json_file(o.cartan);
  if (o.window) s["window"] = o.window;
  return s;
}

int emit(const Json& report, const std::string& output) {
  const std::string text = dump_canonical(report);
  std::cout << text;
  if (!output.empty()) write_text_file(output, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiloop Lie tori over cyclotomic fields"};
  app.require_subcommand(1);

  Common common;
  std::string run_file, shift, p_matrix, phi, mode = "biiso", first, second, tau, modulus, matrix, witness, factors,
                                                example, example_type;
  size_t slots = 0, nullity = 1;

  auto* run = app.add_subcommand("run", "Run a scenario JSON file");
  run->add_option("scenario", run_file, "Scenario file")->required();
  run->add_option("--output", common.output);

  std::vector<std::pair<std::string, CLI::App*>> algebra_cmds;
  algebra_cmds.emplace_back("build", app.add_subcommand("build", "Construct and verify an algebra"));
  for (const char* name : {"grade", "check", "torus", "fingerprint", "isotope"}) {
    const std::string help = std::string(name) == "grade"      ? "Grading by a commuting tuple"
                           : std::string(name) == "check"      ? "Conditions (A1)-(A3) and the torus axioms"
                           : std::string(name) == "torus"      ? "Full multiloop torus report"
                           : std::string(name) == "fingerprint" ? "Bi-isomorphism invariants"
                                                               : "Isotope by a shift in Hom(Q, Z^n)";
    algebra_cmds.emplace_back(name, app.add_subcommand(name, help));
  }
  for (auto& [name, c] : algebra_cmds) add_common(c, common, name != "build");
  algebra_cmds.back().second->add_option("--shift", shift, "Images of the base roots, e.g. '1,1,1' or '1,0;0,1'");

  auto* certify = app.add_subcommand("certify", "Check a bi-isomorphism or isotopy certificate");
  certify->add_option("--spec", common.spec_file);
  certify->add_option("--first", first, "Scenario file of the first torus");
  certify->add_option("--second", second, "Scenario file of the second torus");
  certify->add_option("--P", p_matrix, "Degree change in GL_n(Z)");
  certify->add_option("--phi", phi, "JSON file with the linear map s -> s'");
  certify->add_option("--mode", mode)->check(CLI::IsMember({"biiso", "isotopy"}));
  certify->add_option("--tau", tau, "JSON file with the list of twisting automorphisms");
  certify->add_option("--output", common.output);

  auto* normalize = app.add_subcommand("normalize", "Normal form of A in GL_n(Z/I)");
  normalize->add_option("--modulus", modulus, "m_1,...,m_n with m_{i+1} | m_i")->required();
  normalize->add_option("--matrix", matrix, "A, row-major")->required();
  normalize->add_option("--witness", witness, "B with A B == Id modulo the ideal");
  normalize->add_option("--output", common.output);

  auto* orbits = app.add_subcommand("orbits", "Orbit representatives of generating tuples");
  orbits->add_option("--factors", factors, "Invariant factors f_1,...,f_r")->required();
  orbits->add_option("--slots", slots, "Tuple length n")->required();
  orbits->add_option("--output", common.output);

  auto* ex = app.add_subcommand("example", "Built-in worked examples");
  ex->add_option("name", example, "b3, untwisted, f4-untwisted or diagram")->required();
  ex->add_option("--type", example_type, "Type for 'untwisted' and 'diagram'");
  ex->add_option("--nullity", nullity, "Nullity for 'untwisted'");
  ex->add_option("--window", common.window);
  ex->add_option("--output", common.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Json scenario;
  try {
    if (*run) {
      scenario = read_json_file(run_file);
      if (scenario.contains("output") && common.output.empty()) common.output = scenario.at("output").get<std::string>();
    }
    for (auto& [name, c] : algebra_cmds)
      if (*c) {
        scenario = scenario_from(name, common);
        if (name == "isotope" && !shift.empty()) {
          Json s = Json::array();
          for (const auto& row : parse_rows(shift.find(';') == std::string::npos ? shift + ";" : shift)) s.push_back(row);
          scenario["shift"] = s;
        }
      }
    if (*certify) {
      scenario = common.spec_file.empty() ? Json::object() : read_json_file(common.spec_file);
      scenario["command"] = "certify";
      if (!first.empty()) scenario["first"] = read_json_file(first);
      if (!second.empty()) scenario["second"] = read_json_file(second);
      if (!p_matrix.empty()) scenario["P"] = parse_rows(p_matrix);
      if (!phi.empty()) scenario["phi"] = read_json_file(phi);
      if (!tau.empty()) scenario["tau"] = read_json_file(tau);
      if (!scenario.contains("mode") || certify->count("--mode")) scenario["mode"] = mode;
    }
    if (*normalize) {
      scenario = {{"command", "normalize"}, {"modulus", parse_longs(modulus)}, {"matrix", parse_rows(matrix)}};
      if (!witness.empty()) scenario["witness"] = parse_rows(witness);
    }
    if (*orbits) scenario = {{"command", "orbits"}, {"factors", parse_longs(factors)}, {"slots", slots}};
    if (*ex) {
      scenario = {{"command", "example"}, {"name", example}, {"nullity", nullity}};
      if (!example_type.empty()) scenario["type"] = example_type;
      if (common.window) scenario["window"] = common.window;
    }

    cli::Outcome o = cli::run_scenario(scenario);
    emit(o.report, common.output);
    return o.pass ? 0 : 1;
  } catch (const Error& e) {
    emit(error_json(e), common.output);
    return cli::exit_code_for(e);
  } catch (const std::exception& e) {
    emit(error_json(Error(ErrorCode::SchemaError, "cli", e.what())), common.output);
    return 2;
  }
}
