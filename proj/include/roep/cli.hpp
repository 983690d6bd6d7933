#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace roep::cli {

/// Stable exit-code contract of the command-line front end.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,  // usage, parse or validation error
  kHypothesisFailed = 2,
  kNoSolution = 3,
  kInternal = 4,  // an invariant breach; always a bug
};

/// args[0] is the program name. Commands: validate, check, solve,
/// enumerate, game, gen.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace roep::cli
