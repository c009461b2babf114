#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mrct::cli {

/// Command-line entry point: `run` and `render` subcommands. Returns the
/// process exit code (0 success, 2 validation error, 3 I/O error).
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mrct::cli
