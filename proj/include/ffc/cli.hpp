#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ffc::cli {

enum ExitCode : int {
    success = 0,
    usage_error = 1,
    parse_failure = 2,
    precondition_failure = 3,
    guard_exhausted = 4,
};

// args excludes the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ffc::cli
