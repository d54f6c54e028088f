#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cnfscope::cli {

/// Runs the command line front end with the given arguments (argv[0]
/// excluded). Output goes to `out`, diagnostics to `err`. Returns the
/// process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace cnfscope::cli
