#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bridgeforge {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNonDomestic = 2,
  kExitParse = 3,
  kExitInvariant = 4,
};

// Runs one command line (args excludes the program name). Results go to out,
// JSON diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bridgeforge
