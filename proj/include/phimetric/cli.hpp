#pragma once

#include <iosfwd>

namespace phimetric {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the phimetric command-line tool:
///   phimetric <check|solve|refine|cover|trace> --config PATH [--out DIR] [--seed N] [--verbose]
/// Reports go to --out, else $PHIMETRIC_OUT, else the working directory.
/// Returns 0 on success, 1 when a check or solve fails, 2 on usage or config errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace phimetric
