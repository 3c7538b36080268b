#pragma once

// The llmk command line, callable in-process for testing.

#include <ostream>
#include <string>
#include <vector>

namespace llmk {

/// Exit codes: 0 success, 1 domain failure, 2 usage or IO error.
/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace llmk
