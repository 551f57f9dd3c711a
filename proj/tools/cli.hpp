#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cartan::cli {

enum ExitCode : int { kSuccess = 0, kInvariantFailure = 1, kUsageError = 2 };

/// Runs one command line (args excludes the program name). Output goes to
/// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cartan::cli
