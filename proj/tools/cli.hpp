#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zerograph::cli {

/// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or I/O error.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zerograph::cli
