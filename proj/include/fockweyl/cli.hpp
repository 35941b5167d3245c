// Command-line front end. Exit codes: 0 success or all checks pass, 1 a check
// failed or a runtime error occurred, 2 usage error.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fockweyl::cli {

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fockweyl::cli
