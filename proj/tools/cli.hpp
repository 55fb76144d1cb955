#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symflex::cli {

/// Exit codes of the symflex command.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         ///< usage, I/O or parse error
  kInvalid = 2,       ///< validation failure
  kInconclusive = 3,  ///< inconclusive verdict, closed trace gate or failed trace
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace symflex::cli
