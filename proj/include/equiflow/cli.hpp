#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace equiflow {

/// Runs one command line. Returns 0 on success, 1 on a validation error and 2
/// when a numerical budget runs out. Diagnostics go to err.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_main(int argc, char** argv);

}  // namespace equiflow
