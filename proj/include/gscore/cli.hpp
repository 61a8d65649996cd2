#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gscore::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kInput = 3, kPipeline = 4 };

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out`, diagnostics and progress to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Scientific notation with the shortest round-trip mantissa and a bare
/// exponent: 0 -> "0.0e0", 0.00204 -> "2.04e-3".
std::string format_score(double v);

}  // namespace gscore::cli
