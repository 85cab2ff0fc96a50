#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ptrie::cli {

inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_numeric = 2 };

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ptrie::cli
