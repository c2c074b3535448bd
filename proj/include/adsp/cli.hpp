#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adsp::cli {

enum ExitStatus : int { kComputed = 0, kInvalidInput = 1, kInternalFailure = 2, kResourceCap = 3 };

/// Runs one command line (args excludes the program name). Writes exactly one
/// JSON document to `out` on success and nothing on failure; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace adsp::cli
