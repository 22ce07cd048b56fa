#pragma once

#include <filesystem>
#include <ostream>
#include <string>

namespace bearing {

/// Entry point of the bearingsim tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// A path as given, or a bundled scenario looked up by name.
std::filesystem::path resolve_scenario_path(const std::string& arg);

}  // namespace bearing
