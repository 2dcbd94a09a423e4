#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fenchel::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    kExitUndetermined = 3,
    kExitAssertion = 4,
};

/// Runs the tool on `args` (program name excluded). The report goes to --out
/// when given, else to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fenchel::cli
