#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lsm::cli {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs the tool on argv-style arguments (args[0] is the program name).
// Data goes to `out`, progress and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace lsm::cli
