#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cattaneo::cli {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kExceptional = 2,
    kUnsolvable = 3,
};

/// Runs one subcommand. `args` excludes the program name. CSV goes to `out`
/// unless --out names a file; the one-line summary goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a length token: "pi" or a finite decimal.
double parse_length(const std::string& token);

/// %.17g, with inf/-inf/nan spelled out.
std::string format_double(double x);

}  // namespace cattaneo::cli
