#pragma once

#include <ostream>
#include <span>
#include <string>

namespace divkit::cli {

/// Runs one command line (without the program name). Results go to `out`,
/// diagnostics and usage text to `err`. Returns 0 on success, 2 for bad
/// input or usage, 1 for internal faults and failed self-tests.
int run(std::span<const std::string> args, std::ostream &out, std::ostream &err);

}  // namespace divkit::cli
