#pragma once

#include <iosfwd>

namespace critcouple::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1,  ///< verification or convergence failure
    kUsage = 2,    ///< bad flags, bad config, invalid parameters
};

/// Entry point of the critcouple executable. Reports go to out, diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace critcouple::cli
