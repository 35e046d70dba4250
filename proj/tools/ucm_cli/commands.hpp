#pragma once

#include <ostream>

namespace ucm_cli {

// Exit codes of the front end.
enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitEnvelope = 3,
  kExitConsistency = 4,
};

// Parses argv (argv[0] is the program name) and runs one subcommand. Machine
// output goes to `out`, human-readable summaries and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ucm_cli
