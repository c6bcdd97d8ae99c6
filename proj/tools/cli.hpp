#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace statatom::cli {

enum ExitCode : int { ok = 0, usage_error = 1, not_converged = 2 };

/// Runs one command line (without the program name). Data goes to the
/// --out file or to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace statatom::cli
