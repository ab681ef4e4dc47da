#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ifcdms {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int domain = 2;
inline constexpr int parse = 3;
inline constexpr int lp_failure = 4;
inline constexpr int budget = 5;
inline constexpr int usage = 64;
inline constexpr int io = 74;
}  // namespace exit_code

/// Runs the command line (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ifcdms
