#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plateau::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kNonConvergence = 2,
  kVerificationFailed = 3,
};

/// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "PLATEAU_OUTPUT_DIR";

/// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "2:20:1" (inclusive range), "2,3,4" or a single value.
std::vector<double> parse_lambda_list(const std::string& text);

/// Appends options from a JSON config file for every key not already given
/// on the command line; command-line flags win.
std::vector<std::string> merge_config(const std::vector<std::string>& args);

} // namespace plateau::cli
