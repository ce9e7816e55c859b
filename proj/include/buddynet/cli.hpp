#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace buddynet {

// Entry point behind the buddynet binary; split out so tests can drive the
// CLI in-process. Exit codes: 0 success, 1 input or data errors, 2 usage.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace buddynet
