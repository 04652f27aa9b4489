#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNegative = 2;
inline constexpr int kExitDegeneracy = 3;

/// Environment variable holding the default for --jobs.
inline constexpr const char* kJobsEnv = "AEP_JOBS";

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; the return value is the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aep::cli
