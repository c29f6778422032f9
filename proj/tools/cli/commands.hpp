#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flavorrec::cli {

/// Runs the `flavorrec` command line; args exclude the program name.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flavorrec::cli
