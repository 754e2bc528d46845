#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace patcom::cli {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kIo = 3,
  kEmptyResult = 4,
  kQuerySyntax = 5,
};

/// Runs the command line `args` (args[0] is the program name) and returns
/// the process exit code. All console output goes to `out` and `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace patcom::cli
