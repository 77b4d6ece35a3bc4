#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace javai::cli {

enum ExitCode : int {
  kSuccess = 0,
  kExecutionFailure = 1,
  kParseError = 2,
  kScriptExhausted = 3,
  kUsageError = 4,
};

/// Runs the `javai` command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace javai::cli
