#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace scanplan {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// Command-line entry point. `args` excludes the program name. Results go to
/// `out` (or the --out file); diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace scanplan
