#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace control_forge::cli {

/// What a command prints: the echoed command line, a human-readable section
/// and a machine-readable JSON section.
struct RunReport {
  std::string command;
  std::vector<std::string> human;
  nlohmann::ordered_json machine;
};

/// 0 for a positive outcome (solution found, verified, no counterexample),
/// 1 for a negative one. Reads only machine["outcome"].
int exit_code_of(const nlohmann::ordered_json& machine);

void print_report(const RunReport& report, std::ostream& out);

/// Runs one command line (without the program name). Returns the exit
/// code: 0 positive, 1 negative, 2 usage or input error.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace control_forge::cli
