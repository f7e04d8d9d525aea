#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace matchdist::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

/// Entry point of the `matchdist` tool. args excludes the program name.
/// Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matchdist::cli
