#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace petriforge::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDomainFailure = 1,
  kIoFailure = 2,
  kIncomplete = 3,
};

/// Runs the command line `args` (without the program name). The step REPL
/// reads from `in`; everything else only writes to `out` and `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace petriforge::cli
