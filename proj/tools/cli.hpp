#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cvtp::cli {

/// Runs one invocation; `args` excludes the program name. Returns the process exit code:
/// 0 success, 1 failed check, 2 usage or configuration error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cvtp::cli
