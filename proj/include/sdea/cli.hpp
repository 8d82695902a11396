#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdea::cli {

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2 };

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.9g"
std::string format_number(double v);

}  // namespace sdea::cli
