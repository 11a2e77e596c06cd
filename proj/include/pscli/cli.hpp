#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pscli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitNumerical = 2, kExitDivergence = 3 };

/// Runs one command. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pscli
