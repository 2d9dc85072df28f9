#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace univip::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInvalidArguments = 2,
  kIoFailure = 3,
  kEngineError = 4,
};

/// Runs the command line `args` (args[0] is the program name). Human output
/// goes to `out`; errors are single JSON lines on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace univip::cli
