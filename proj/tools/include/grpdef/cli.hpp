#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace grpdef::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInconclusive = 1,  // also "not found"
  kInputError = 2,
  kBudgetExceeded = 3,
};

struct CommandResult {
  int exit_code = kSuccess;
  nlohmann::json payload;
  std::string human_text;
};

/// Runs one command. `args` excludes the program name. The rendering
/// (payload with --json, human text otherwise) goes to `out`; diagnostics
/// and usage go to `err`.
CommandResult dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace grpdef::cli
