#pragma once

#include <iosfwd>

namespace tonnetz::cli {

enum ExitCode : int {
    kSuccess = 0,
    kFailure = 1, ///< some (or all) inputs could not be processed
    kUsage = 2,
    kIoError = 3,
};

/// Runs the `tonnetz` command line. Never throws; returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tonnetz::cli
