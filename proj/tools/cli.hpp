#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace growth::cli {

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kInvalidInput = 2,
  kSizeBound = 3,
  kInapplicable = 4,
  kNoConvergence = 5,
};

/// Runs one command line. `args` excludes the program name. Files named by
/// --out are written directly; "-" (the default) goes to `out`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace growth::cli
