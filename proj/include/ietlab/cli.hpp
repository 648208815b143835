#pragma once

#include <string>
#include <vector>

namespace ietlab {

// Full command-line front end, callable in-process so tests can exercise
// it. args excludes the program name. Exit codes: 0 success, 1 validation
// error, 2 tolerance/budget failure, 3 degeneracy left only partial
// results.
int run_cli(const std::vector<std::string>& args);

}  // namespace ietlab
