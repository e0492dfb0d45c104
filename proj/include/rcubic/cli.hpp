#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rcubic {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs the command line `args` (program name excluded), printing to the
/// given streams and writing artifacts under the configured output_dir.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rcubic
