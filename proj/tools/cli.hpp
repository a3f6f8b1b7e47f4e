#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sepvol::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInfeasible = 3;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kOutputDirEnv = "SEPVOL_OUTPUT_DIR";

/// Runs one command line. `args` excludes the program name. The summary
/// line goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sepvol::cli
