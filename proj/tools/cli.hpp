#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eigenforge::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kNonConvergence = 3,
  kNoLattice = 4,
};

// args excludes the program name. Results go to `out` unless --out names a
// file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eigenforge::cli
