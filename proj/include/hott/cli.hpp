#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hott::cli {

enum ExitCode { Pass = 0, CheckFailure = 1, UsageError = 2, ResourceCap = 3 };

/// Runs the command line (without the program name). Reports go to `out`,
/// diagnostics in text mode to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hott::cli
