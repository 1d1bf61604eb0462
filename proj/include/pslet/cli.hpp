#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pslet::cli {

enum ExitCode : int
{
  kOk = 0,
  kUsage = 2,
  kParse = 3,
  kSolver = 4,
  kCheckFailed = 5,
};

/// Runs the command line `pslet <subcommand> ...`; argv[0] is the program
/// name. Normal output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pslet::cli
