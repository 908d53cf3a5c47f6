#pragma once

#include <iosfwd>

namespace entdetect::cli {

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kNoThreshold = 3 };

/// Runs one command line. Results go to `out` unless --out names a file;
/// diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace entdetect::cli
