#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nestquot::cli {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kParse = 3,
  kInvalidPoint = 4,
  kUnsupported = 5,
  kResourceBound = 6,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nestquot::cli
