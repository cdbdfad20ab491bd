#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cropped {

// Runs the command line (args excludes the program name). Exit codes: 0 ok,
// 1 transport failure, 2 validation error, 3 inconclusive numerics.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cropped
