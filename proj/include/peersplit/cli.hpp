#pragma once

#include <string>
#include <vector>

namespace peersplit {

// Runs the command-line interface on a full argv (args[0] is the program
// name). Returns the process exit code: 0 success, 2 usage/config error,
// 1 runtime error.
int run_cli(std::vector<std::string> args);

}  // namespace peersplit
