#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace vecgate::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 2, kBackend = 3 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vecgate::cli
