#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtsim::cli {

/// Subcommand dispatch. `args` excludes the program name. Exit codes:
/// 0 success, 1 runtime error or truth-table mismatch, 2 usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mtsim::cli
