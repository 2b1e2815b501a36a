#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fov::cli {

// Exit codes are part of the command-line contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitPrecondition = 4;

/// Runs the `fovkit` command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fov::cli
