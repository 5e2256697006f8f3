#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qpsc::cli {

enum ExitCode : int {
    ok = 0,
    verification_failed = 1,
    flag_error = 2,
    parse_error = 3,
    inadmissible = 4,
};

/// Runs the command line `args` (without the program name). Results go to
/// `out` or to the --output file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpsc::cli
