// Command-line front end: model ingestion, decision-rule dispatch, region
// dumps, and simulation runs.  `execute` is the full program logic so tests
// can drive the CLI in-process; the binary in tools/ is a thin wrapper.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace jscc {

// Runs one CLI invocation.  `args` excludes the program name.  Returns the
// process exit code: 0 success, 1 decision-rule precondition violation,
// 2 usage/parse/validation error.
int execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace jscc
