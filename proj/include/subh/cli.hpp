#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subh {

// Full command-line front end; args excludes the program name.  Returns the
// process exit code: 0 all checks passed, 1 a mathematical check failed,
// 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace subh
