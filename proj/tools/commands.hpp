#pragma once

#include <iosfwd>

namespace bdshift::cli {

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kDomain = 3, kNonconvergence = 4 };

/// Runs one command. JSON goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bdshift::cli
