#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace compplan::cli {

// Full command-line entry point; args excludes the program name. Returns the
// process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace compplan::cli
