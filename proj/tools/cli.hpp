#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace charmut::cli {

/// Runs one command line (without the program name).  Returns 0 when every
/// check passes, 2 when a check fails, 1 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charmut::cli
