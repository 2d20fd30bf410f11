#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace farch::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `farch` tool. `args` excludes the program name.
/// Subcommands: simulate, fit, diagnose, returns.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace farch::cli
