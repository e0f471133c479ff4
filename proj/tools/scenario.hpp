#pragma once

// Scenario runner shared by the CLI subcommands and `run spec.json`.

#include <lietorus/serialize.hpp>

namespace lietorus::cli {

struct Outcome {
  Json report;
  bool pass = true;
};

// Dispatches on spec["command"]; throws Error on bad input.
Outcome run_scenario(const Json& spec);

// 0 pass, 1 check failure, 2 input error, 3 field too small.
int exit_code_for(const Error& e);

}  // namespace lietorus::cli
