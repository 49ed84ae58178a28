#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltl::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kUserError = 1, kBudget = 2, kInternal = 3 };

/// Runs one invocation (`args` excludes the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltl::cli
