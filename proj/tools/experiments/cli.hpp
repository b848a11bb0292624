#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abstain::experiments {

/// Environment variable naming the directory for CSV output when --out is
/// missing or relative.
inline constexpr const char* kOutputDirEnv = "ABSTAIN_OUTPUT_DIR";

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntimeError = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `abstain` binary. `args` excludes the program name.
/// CSV goes to --out (or stdout), diagnostics and help to `err`/`out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abstain::experiments
