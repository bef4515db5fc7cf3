#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace splab::cli {

/// Exit codes: 0 success, 1 usage or parse error, 2 assumption flag,
/// 3 numerical failure.
enum ExitCode : int { kOk = 0, kUsage = 1, kAssumption = 2, kNumerical = 3 };

/// Runs one command line (args[0] is the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splab::cli
