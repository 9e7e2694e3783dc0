#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strahler::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsageError = 2 };

// Runs the tool. args[0] is the program name. Tables go to `out` (or to
// --out PATH), diagnostics and logging to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace strahler::cli
