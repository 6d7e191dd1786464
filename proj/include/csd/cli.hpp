#pragma once

#include <iosfwd>

namespace csd {

enum ExitCode { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

// Entry point of the csd tool. Results go to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace csd
