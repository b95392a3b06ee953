#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gramconv::cli {

enum ExitCode : int {
    kOk = 0,
    kMismatch = 1,
    kFormatError = 2,
    kInvariantViolation = 3,
};

/// Runs the command line `args` (without the program name). Regular output
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gramconv::cli
