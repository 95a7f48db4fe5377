#pragma once
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace hbo::cli {

enum ExitCode { exit_ok = 0, exit_validation = 2, exit_numerical = 3 };

struct CommandOutcome {
  int exit_code = exit_ok;
  std::string run_dir, run_id, message;
  std::vector<std::string> outputs;
  nlohmann::json results = nlohmann::json::object();
};

// validated dispatch of one subcommand; parameters are raw key=value overrides
CommandOutcome run_command(const std::string& command, const std::map<std::string, std::string>& params,
                           std::ostream& log);

// full command line: hbo-lab <command> [--config file] [--workers n] [--key value ...]
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hbo::cli
