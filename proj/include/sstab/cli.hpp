#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sstab {

// Runs one subcommand (check, rootset, count, synthesize, verify, simulate,
// refute). Results go to `out`, diagnostics and timings to `err`.
// Exit codes: 0 success, 1 characterization/verification failure, 2
// usage/parse error, 3 resource budget exceeded.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace sstab
