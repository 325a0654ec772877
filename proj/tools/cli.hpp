#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace weylflow::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsageError = 2,
};

/// Runs one weylflow invocation; args excludes the program name.
/// Results go to `out`; warnings and error JSON go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weylflow::cli
