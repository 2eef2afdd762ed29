#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hermcap::cli {

/// Exit codes: 0 success, 1 domain or invariant failure, 2 usage or configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the hermcap command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hermcap::cli
