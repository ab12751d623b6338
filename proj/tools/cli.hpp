#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace glider::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). All output goes
/// to the given streams so the whole tool is testable in-process.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace glider::cli
