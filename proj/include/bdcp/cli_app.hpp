#pragma once

namespace bdcp {

// Command-line entry point (subcommands detect / simulate / evaluate /
// profile). Returns the process exit code: 0 on success, 2 on invalid
// input or configuration.
int run_cli(int argc, const char *const *argv);

}  // namespace bdcp
