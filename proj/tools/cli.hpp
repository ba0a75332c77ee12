#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ionstore::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kInfeasible = 3 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ionstore::cli
