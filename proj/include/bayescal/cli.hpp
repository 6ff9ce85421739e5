#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bayescal::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kValidation = 3,
  kIo = 4,
  kToleranceBreach = 5,
};

/// Runs the command line `args` (args[0] is the program name). Structured
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bayescal::cli
