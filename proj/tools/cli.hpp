#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thinsys::cli {

/// Exit codes.
inline constexpr int exit_positive = 0;   // SDR, permutation, solution, ...
inline constexpr int exit_refutation = 1; // kernel vector, unsolvable core, ...
inline constexpr int exit_usage = 2;      // bad arguments, malformed input, precondition
inline constexpr int exit_internal = 3;   // a certificate failed its own check

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace thinsys::cli
