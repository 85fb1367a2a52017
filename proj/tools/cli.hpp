#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace isoflow::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace isoflow::cli
