#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mhk::cli {

inline constexpr const char* kToolVersion = "0.3.0";

// Default directory for output files when --output is not given.
inline constexpr const char* kOutputDirEnv = "MHK_OUTPUT_DIR";

enum ExitCode : int {
    kOk = 0,
    kIdentityFailed = 1,
    kDomainError = 2,
    kNonConvergent = 3,
};

// args excludes the program name. Records go to out (or the output file),
// diagnostics and per-case report lines to diag.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag);

}  // namespace mhk::cli
