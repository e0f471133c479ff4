#include <doctest.h>

#include <lietorus/serialize.hpp>
#include <sys/wait.h>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "scenario.hpp"

using namespace lietorus;
using lietorus::cli::Outcome;
using lietorus::cli::run_scenario;
namespace fs = std::filesystem;

namespace {

struct Run {
  std::string out;
  int code = -1;
  Json json() const { return Json::parse(out); }
};

Run invoke(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(LIETORUS_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  size_t k;
  while ((k = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, k);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "lietorus_cli_test";
  fs::create_directories(d);
  return d;
}

std::string write(const std::string& name, const Json& j) {
  fs::path p = scratch() / name;
  std::ofstream(p) << j.dump();
  return p.string();
}

void check_error_object(const Json& j, const std::string& code) {
  REQUIRE(j.contains("error"));
  CHECK(j.size() == 1);
  CHECK(j["error"]["code"] == code);
  CHECK(j["error"]["operation"].is_string());
  CHECK_FALSE(j["error"]["operation"].get<std::string>().empty());
  CHECK(j["error"]["detail"].is_string());
}

}  // namespace

TEST_CASE("check F4 with the identity tuple") {
  Run r = invoke("check --algebra F4 --tuple identity");
  CHECK(r.code == 0);
  Json j = r.json();
  CHECK(j["pass"] == true);
  for (const char* k : {"(A1)", "(A2)", "(A3)", "(LT1)", "(LT2)(i)", "(LT2)(ii)", "(LT3)", "(LT4)", "(LT5)"}) {
    CAPTURE(k);
    CHECK(j["checks"][k] == true);
  }
  CHECK(j["A_conditions"]["components"].size() == 1);
  CHECK(j["A_conditions"]["components"][0]["dim"] == 52);
}

TEST_CASE("example b3 report") {
  Run r = invoke("example b3");
  CHECK(r.code == 0);
  Json j = r.json();
  CHECK(j["pass"] == true);
  CHECK(j["algebra"]["dim"] == 21);
  CHECK(j["algebra"]["type"] == "B3");
  CHECK(j["A_conditions"]["group_order"] == 8);
  CHECK(j["checks"].size() >= 9);
  for (const auto& [k, v] : j["checks"].items()) {
    CAPTURE(k);
    CHECK(v == true);
  }
  Run again = invoke("example b3");
  CHECK(again.out == r.out);
}

TEST_CASE("normalize from the command line") {
  Run r = invoke("normalize --modulus 5,5 --matrix 1,0,0,2");
  CHECK(r.code == 0);
  Json j = r.json();
  CHECK(j["normal_form"]["p"] == 2);
  CHECK(j["pass"] == true);

  Run bad = invoke("normalize --modulus 2,4 --matrix 1,0,0,1");
  CHECK(bad.code == 2);
  check_error_object(bad.json(), "DivisibilityChainViolated");
}

TEST_CASE("exit codes") {
  // A repeated diagram automorphism generates a group smaller than the period product.
  Json rep{{"automorphisms", Json::array({Json{{"diagram", {3, 2, 1}}}, Json{{"diagram", {3, 2, 1}}}})}};
  Run fail = invoke("check --algebra A3 --tuple " + write("a3_repeat.json", rep));
  CHECK(fail.code == 1);
  Json jf = fail.json();
  CHECK(jf["pass"] == false);
  CHECK(jf["checks"]["(A3)"] == false);
  bool labelled = false;
  for (const auto& s : jf["A_conditions"]["failures"]) labelled = labelled || s.get<std::string>().rfind("(A3)", 0) == 0;
  CHECK(labelled);

  Json flip{{"automorphisms", Json::array({Json{{"diagram", {2, 1}}}})}};
  Run small = invoke("check --algebra A2 --conductor 1 --tuple " + write("a2_flip.json", flip));
  CHECK(small.code == 3);
  check_error_object(small.json(), "ConductorTooSmall");
  Run ok = invoke("check --algebra A2 --tuple " + write("a2_flip.json", flip));
  CHECK(ok.code == 0);

  Run parse = invoke("normalize --modulus");
  CHECK(parse.code == 2);
  Run missing = invoke("check --algebra A2 --tuple " + (scratch() / "does_not_exist.json").string());
  CHECK(missing.code == 2);
  check_error_object(missing.json(), "IoError");
  Run schema = invoke("run " + write("no_command.json", Json{{"algebra", "A1"}}));
  CHECK(schema.code == 2);
  check_error_object(schema.json(), "SchemaError");
  Run window = invoke("check --algebra A1 --tuple identity", "LIETORUS_WINDOW=abc");
  CHECK(window.code == 2);
}

TEST_CASE("scenario files and output paths") {
  const std::string out = (scratch() / "report.json").string();
  fs::remove(out);
  Json spec{{"command", "orbits"}, {"factors", {5, 5}}, {"slots", 2}, {"output", out}};
  Run r = invoke("run " + write("orbits.json", spec));
  CHECK(r.code == 0);
  Json j = r.json();
  CHECK(j["command"]["command"] == "orbits");
  CHECK(j["pass"] == true);
  REQUIRE(fs::exists(out));
  std::ifstream in(out);
  std::string written((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(written == r.out);

  // The same scenario through the library entry point gives the same report.
  Outcome o = run_scenario(spec);
  CHECK(o.pass);
  CHECK(dump_canonical(o.report) == r.out);
}

TEST_CASE("schemas ship with the repository") {
  for (const char* name : {"scenario", "automorphism", "algebra", "report"}) {
    CAPTURE(name);
    fs::path p = fs::path(LIETORUS_SCHEMAS) / (std::string(name) + ".schema.json");
    REQUIRE(fs::exists(p));
    Json j = read_json_file(p.string());
    CHECK(j.contains("$schema"));
  }
  Json scenario = read_json_file((fs::path(LIETORUS_SCHEMAS) / "scenario.schema.json").string());
  Json b3 = invoke("example b3").json();
  for (const auto& [k, v] : b3["command"].items()) {
    CAPTURE(k);
    CHECK(scenario["properties"].contains(k));
  }
}

TEST_CASE("every built-in example runs") {
  for (const char* args : {"example untwisted", "example untwisted --type G2 --nullity 2", "example f4-untwisted",
                           "example diagram --type A2", "example diagram --type D4-3"}) {
    CAPTURE(args);
    Run r = invoke(args);
    CHECK(r.code == 0);
    CHECK(r.json()["pass"] == true);
  }
  Run bad = invoke("example diagram --type B7");
  CHECK(bad.code == 2);
  check_error_object(bad.json(), "SchemaError");
}
