#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsketch {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFails = 1, kExitInput = 2, kExitExhausted = 3 };

/// Runs the command line `args` (without the program name), writing reports
/// to `out` and diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsketch
