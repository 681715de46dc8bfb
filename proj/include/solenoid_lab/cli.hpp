#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace solenoid_lab {

inline constexpr const char* version_string = "solenoid-lab 0.1.0";

/// Runs one subcommand. Exit codes: 0 success, 1 precondition violation or
/// failed check, 2 I/O failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace solenoid_lab
