#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sympl::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;     // I/O, file format, shape or usage error
inline constexpr int kExitRejected = 2;  // input rejected on mathematical grounds

/// Runs one command line (without the program name). The report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sympl::cli
