#pragma once

#include <iosfwd>

namespace contactgeom::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInput = 3,
  kCheckFailed = 4,
  kNotConverged = 5,
};

/// Parses argv and runs one command. Diagnostics go to `err`, summaries to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace contactgeom::cli
