#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ghm::cli {

// Exit codes: 0 success, 1 usage, 2 numerical / convergence, 3 IO.
enum exit_code : int { exit_ok = 0, exit_usage = 1, exit_numerical = 2, exit_io = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Same as above with argv[0] supplied; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ghm::cli
