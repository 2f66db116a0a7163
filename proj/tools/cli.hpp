#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gabinv::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kGuardExceeded = 2, kMismatch = 3 };

/// Runs the command line `args` (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gabinv::cli
