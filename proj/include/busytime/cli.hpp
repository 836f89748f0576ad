#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace busytime {

// Runs one CLI invocation (argv without the program name). Exit codes:
// 0 success, 1 validation/limit failure, 2 usage error.
int dispatch_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace busytime
