#pragma once

#include <string>
#include <vector>

namespace cascade {

// Dispatches one invocation; args excludes the program name. Returns the
// process exit code: 0 success, 1 configuration error, 2 numerical or
// I/O failure. Errors print a one-line JSON diagnostic to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace cascade
