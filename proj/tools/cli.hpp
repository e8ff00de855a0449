#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace compkern::cli {

// Exit codes returned by run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

// Runs one command; args excludes the program name. Progress goes to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compkern::cli
