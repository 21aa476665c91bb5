#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcameta::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kUsageError = 2 };

/// Runs one invocation. `args` includes the program name. Report data goes to
/// `out` (or the --output file); every diagnostic goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lcameta::cli
