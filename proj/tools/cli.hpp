#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace w1fl::cli {

/// Runs the command line `args` (without the program name). Returns the
/// process exit code: 0 success, 1 invalid input, 2 numerical or
/// verification failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace w1fl::cli
