#pragma once

#include <ostream>

namespace latcensus::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kCapExceeded = 2,
  kUsage = 64,
};

// Entry point of the `latcensus` tool. Machine-readable output goes to
// `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latcensus::cli
