#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hiwx::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;    // unexpected internal error
inline constexpr int kExitUsage = 2;      // bad flags or arguments
inline constexpr int kExitInput = 3;      // unreadable or inconsistent input files
inline constexpr int kExitComputation = 4; // inputs valid but the requested result is undefined

// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hiwx::cli
