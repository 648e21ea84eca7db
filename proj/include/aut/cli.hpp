#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aut::cli {

// Dispatches one invocation (argv without the program name).  Returns the
// process exit code: 0 success / verdict passes, 1 verification failure,
// 2 input or usage error.
int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace aut::cli
