#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mobisim {

/// Command-line entry point. `args` excludes the program name. Returns 0 on
/// success, 2 for configuration errors, 1 for any other failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mobisim
