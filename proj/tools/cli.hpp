#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wordle::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kInconsistent = 3 };

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wordle::cli
