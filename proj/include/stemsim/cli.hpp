#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stemsim {

/// Runs one CLI invocation (args exclude the program name) and returns the
/// process exit code: 0 success, 1 partial/run failure, 2 usage error or
/// missing input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace stemsim
